#pragma once

// Exact rational scalars, vectors and matrices, plus the small set of linear
// algebra kernels the rest of the library is written against: fraction-free
// elimination (rank, unique solves, kernels) and an exact simplex method used
// for nonnegative-span feasibility and linear programs.
//
// Nothing in here ever touches floating point except to_decimal(), which only
// renders values for humans.

#include <algorithm>
#include <cstddef>
#include <iomanip>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace credal {

using Int = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rat = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;
using RatVector = std::vector<Rat>;
using RatMatrix = std::vector<RatVector>;

/// Malformed or dimensionally inconsistent input.
class input_error : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An operation was called outside its documented precondition.
class precondition_error : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Input is well formed but outside what the operation supports.
class unsupported_input : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// ---------------------------------------------------------------------------
// Rational text form: "p/q", or "p" when q == 1, always in lowest terms.

inline std::string to_string(const Rat& r) { return r.str(); }

inline Rat parse_rat(std::string_view text)
{
    auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
    while (!text.empty() && is_space(text.front())) text.remove_prefix(1);
    while (!text.empty() && is_space(text.back())) text.remove_suffix(1);

    auto bad = [&]() { return input_error("not a rational number: \"" + std::string(text) + "\""); };
    if (text.empty()) throw bad();

    const auto slash = text.find('/');
    std::string_view num = text.substr(0, slash);
    std::string_view den = slash == std::string_view::npos ? std::string_view{} : text.substr(slash + 1);

    auto digits_only = [](std::string_view s, bool allow_sign) {
        if (allow_sign && !s.empty() && (s.front() == '-' || s.front() == '+')) s.remove_prefix(1);
        return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
    };
    if (!digits_only(num, true)) throw bad();
    if (slash != std::string_view::npos && !digits_only(den, false)) throw bad();

    std::string num_str(num);
    if (num_str.front() == '+') num_str.erase(0, 1);
    Int p(num_str);
    Int q = slash == std::string_view::npos ? Int(1) : Int(std::string(den));
    if (q == 0) throw input_error("zero denominator in \"" + std::string(text) + "\"");
    return Rat(p, q);
}

/// Non-authoritative 12-significant-digit rendering.
inline std::string to_decimal(const Rat& r, int digits = 12)
{
    std::ostringstream out;
    out << std::setprecision(digits) << r.convert_to<double>();
    return out.str();
}

inline std::string to_string(const RatVector& v)
{
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ',';
        s += to_string(v[i]);
    }
    return s;
}

// ---------------------------------------------------------------------------
// Vector helpers.

inline Rat dot(const RatVector& a, const RatVector& b)
{
    if (a.size() != b.size()) throw input_error("dot: length mismatch");
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline RatVector operator+(const RatVector& a, const RatVector& b)
{
    if (a.size() != b.size()) throw input_error("vector sum: length mismatch");
    RatVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline RatVector operator-(const RatVector& a, const RatVector& b)
{
    if (a.size() != b.size()) throw input_error("vector difference: length mismatch");
    RatVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline RatVector operator-(const RatVector& a)
{
    RatVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
    return r;
}

inline RatVector operator*(const Rat& s, const RatVector& a)
{
    RatVector r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = s * a[i];
    return r;
}

inline RatVector constant_vector(std::size_t n, const Rat& value) { return RatVector(n, value); }

inline RatVector unit_vector(std::size_t n, std::size_t i)
{
    RatVector v(n, Rat(0));
    v.at(i) = 1;
    return v;
}

inline bool is_zero(const RatVector& v)
{
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

inline std::size_t column_count(const RatMatrix& m)
{
    if (m.empty()) return 0;
    const std::size_t cols = m.front().size();
    for (const auto& row : m)
        if (row.size() != cols) throw input_error("matrix is not rectangular");
    return cols;
}

inline RatMatrix transpose(const RatMatrix& m)
{
    const std::size_t cols = column_count(m);
    RatMatrix t(cols, RatVector(m.size()));
    for (std::size_t i = 0; i < m.size(); ++i)
        for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
    return t;
}

inline RatVector multiply(const RatMatrix& m, const RatVector& x)
{
    RatVector r;
    r.reserve(m.size());
    for (const auto& row : m) r.push_back(dot(row, x));
    return r;
}

// ---------------------------------------------------------------------------
// Fraction-free elimination.

namespace detail {

using IntMatrix = std::vector<std::vector<Int>>;

// Each row is multiplied by the lcm of its denominators; row scaling does not
// change rank, kernel, or (with the rhs scaled alongside) solutions.
inline IntMatrix integerize(const RatMatrix& m)
{
    IntMatrix out;
    out.reserve(m.size());
    for (const auto& row : m) {
        Int l = 1;
        for (const auto& x : row) l = boost::multiprecision::lcm(l, Int(denominator(x)));
        std::vector<Int> r;
        r.reserve(row.size());
        for (const auto& x : row) r.push_back(Int(numerator(x)) * (l / Int(denominator(x))));
        out.push_back(std::move(r));
    }
    return out;
}

struct Echelon {
    IntMatrix rows;                    // row echelon form, rows beyond pivots are zero
    std::vector<std::size_t> pivots;   // pivot column of row k
};

// Bareiss elimination. After step k every entry below the pivots is a
// (k+1)-minor of the input, so the division by the previous pivot is exact.
inline Echelon bareiss(IntMatrix m, std::size_t cols)
{
    const std::size_t rows = m.size();
    Echelon e;
    Int prev = 1;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j) m[i][j] = (m[r][c] * m[i][j] - m[i][c] * m[r][j]) / prev;
            m[i][c] = 0;
        }
        prev = m[r][c];
        e.pivots.push_back(c);
        ++r;
    }
    e.rows = std::move(m);
    return e;
}

// Back substitution of the pivot variables, given values for the free ones
// already stored in x. rhs_col indexes the augmented column (or cols when the
// system is homogeneous).
inline void back_substitute(const Echelon& e, std::size_t rhs_col, RatVector& x)
{
    for (std::size_t k = e.pivots.size(); k-- > 0;) {
        const auto& row = e.rows[k];
        const std::size_t c = e.pivots[k];
        Rat s = rhs_col < row.size() ? Rat(row[rhs_col]) : Rat(0);
        for (std::size_t j = c + 1; j < x.size(); ++j)
            if (row[j] != 0) s -= Rat(row[j]) * x[j];
        x[c] = s / Rat(row[c]);
    }
}

} // namespace detail

inline std::size_t rank(const RatMatrix& m)
{
    const std::size_t cols = column_count(m);
    return detail::bareiss(detail::integerize(m), cols).pivots.size();
}

/// Unique exact solution of M x = b for a rectangular M, or nullopt when the
/// system is inconsistent or underdetermined.
inline std::optional<RatVector> solve_system(const RatMatrix& m, const RatVector& b)
{
    const std::size_t cols = column_count(m);
    if (b.size() != m.size()) throw input_error("solve: rhs length does not match row count");
    RatMatrix aug = m;
    for (std::size_t i = 0; i < aug.size(); ++i) aug[i].push_back(b[i]);
    auto e = detail::bareiss(detail::integerize(aug), cols + 1);
    if (!e.pivots.empty() && e.pivots.back() == cols) return std::nullopt;
    if (e.pivots.size() < cols) return std::nullopt;
    RatVector x(cols, Rat(0));
    detail::back_substitute(e, cols, x);
    return x;
}

inline std::optional<RatVector> solve_square(const RatMatrix& m, const RatVector& b)
{
    const std::size_t cols = column_count(m);
    if (cols != m.size()) throw input_error("solve_square: matrix is not square");
    if (b.size() != m.size()) throw input_error("solve_square: rhs length mismatch");
    return solve_system(m, b);
}

/// Basis of {x : M x = 0}; `cols` is needed when M has no rows.
inline std::vector<RatVector> nullspace(const RatMatrix& m, std::size_t cols)
{
    if (!m.empty() && column_count(m) != cols) throw input_error("nullspace: column count mismatch");
    auto e = detail::bareiss(detail::integerize(m), cols);
    std::vector<bool> is_pivot(cols, false);
    for (auto c : e.pivots) is_pivot[c] = true;

    std::vector<RatVector> basis;
    for (std::size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RatVector x(cols, Rat(0));
        x[f] = 1;
        detail::back_substitute(e, cols, x);
        basis.push_back(std::move(x));
    }
    return basis;
}

inline std::vector<RatVector> nullspace(const RatMatrix& m) { return nullspace(m, column_count(m)); }

/// Coefficients c with sum_k c_k basis[k] = v, when the basis vectors are
/// linearly independent and v lies in their span.
inline std::optional<RatVector> coordinates(const std::vector<RatVector>& basis, const RatVector& v)
{
    if (basis.empty()) return is_zero(v) ? std::optional<RatVector>(RatVector{}) : std::nullopt;
    RatMatrix cols_as_rows = basis;
    for (const auto& b : basis)
        if (b.size() != v.size()) throw input_error("coordinates: length mismatch");
    return solve_system(transpose(cols_as_rows), v);
}

// ---------------------------------------------------------------------------
// Exact simplex: minimize c.x subject to A x = b, x >= 0.

enum class LpStatus { optimal, infeasible, unbounded };

struct LpSolution {
    LpStatus status = LpStatus::infeasible;
    Rat value;
    RatVector x;
};

namespace detail {

class Tableau {
public:
    Tableau(const RatMatrix& a, const RatVector& b)
        : m_(a.size()), n_(a.empty() ? 0 : a.front().size()), rhs_(n_ + m_)
    {
        t_.assign(m_, RatVector(n_ + m_ + 1, Rat(0)));
        basis_.resize(m_);
        for (std::size_t i = 0; i < m_; ++i) {
            const bool flip = b[i] < 0;
            for (std::size_t j = 0; j < n_; ++j) t_[i][j] = flip ? Rat(-a[i][j]) : a[i][j];
            t_[i][n_ + i] = 1;
            t_[i][rhs_] = flip ? Rat(-b[i]) : b[i];
            basis_[i] = n_ + i;
        }
        active_.assign(m_, true);
    }

    // Phase 1; returns false when A x = b, x >= 0 has no solution.
    bool find_feasible_basis()
    {
        obj_.assign(n_ + m_ + 1, Rat(0));
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < n_; ++j) obj_[j] -= t_[i][j];
            obj_[rhs_] -= t_[i][rhs_];
        }
        run(n_);
        if (obj_[rhs_] != 0) return false;

        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            std::size_t j = 0;
            while (j < n_ && t_[i][j] == 0) ++j;
            if (j < n_)
                pivot(i, j);
            else
                active_[i] = false;   // redundant equality row
        }
        return true;
    }

    LpSolution optimize(const RatVector& c)
    {
        obj_.assign(n_ + m_ + 1, Rat(0));
        for (std::size_t j = 0; j < n_; ++j) obj_[j] = c[j];
        for (std::size_t i = 0; i < m_; ++i) {
            if (!active_[i]) continue;
            const Rat cb = c[basis_[i]];
            if (cb == 0) continue;
            for (std::size_t j = 0; j <= rhs_; ++j) obj_[j] -= cb * t_[i][j];
        }
        LpSolution sol;
        if (!run(n_)) {
            sol.status = LpStatus::unbounded;
            return sol;
        }
        sol.status = LpStatus::optimal;
        sol.x.assign(n_, Rat(0));
        for (std::size_t i = 0; i < m_; ++i)
            if (active_[i] && basis_[i] < n_) sol.x[basis_[i]] = t_[i][rhs_];
        sol.value = -obj_[rhs_];
        return sol;
    }

private:
    // Bland's rule over columns [0, limit); false when unbounded.
    bool run(std::size_t limit)
    {
        for (;;) {
            std::size_t enter = limit;
            for (std::size_t j = 0; j < limit; ++j)
                if (obj_[j] < 0) { enter = j; break; }
            if (enter == limit) return true;

            std::size_t leave = m_;
            Rat best;
            for (std::size_t i = 0; i < m_; ++i) {
                if (!active_[i] || t_[i][enter] <= 0) continue;
                Rat ratio = t_[i][rhs_] / t_[i][enter];
                if (leave == m_ || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m_) return false;
            pivot(leave, enter);
        }
    }

    void pivot(std::size_t row, std::size_t col)
    {
        const Rat p = t_[row][col];
        for (auto& x : t_[row]) x /= p;
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == row || t_[i][col] == 0) continue;
            const Rat f = t_[i][col];
            for (std::size_t j = 0; j <= rhs_; ++j)
                if (t_[row][j] != 0) t_[i][j] -= f * t_[row][j];
        }
        if (obj_.size() == t_[row].size() && obj_[col] != 0) {
            const Rat f = obj_[col];
            for (std::size_t j = 0; j <= rhs_; ++j)
                if (t_[row][j] != 0) obj_[j] -= f * t_[row][j];
        }
        basis_[row] = col;
    }

    std::size_t m_, n_, rhs_;
    RatMatrix t_;
    RatVector obj_;
    std::vector<std::size_t> basis_;
    std::vector<bool> active_;
};

} // namespace detail

inline LpSolution simplex_min(const RatMatrix& a, const RatVector& b, const RatVector& c)
{
    const std::size_t n = column_count(a);
    if (b.size() != a.size() || c.size() != n) throw input_error("simplex_min: dimension mismatch");
    detail::Tableau tab(a, b);
    if (!tab.find_feasible_basis()) return {};
    return tab.optimize(c);
}

// ---------------------------------------------------------------------------
// Nonnegative span feasibility.

struct SpanWitness {
    RatVector alpha;   // one per generator, all >= 0
    RatVector beta;    // one per lineality vector, free sign
};

/// Decides v = sum alpha_g g + sum beta_l l with alpha >= 0, beta free, as an
/// exact phase-1 problem; lineality vectors enter as +l and -l columns.
inline std::optional<SpanWitness> in_nonneg_span(const std::vector<RatVector>& gens,
                                                 const std::vector<RatVector>& lineality,
                                                 const RatVector& v)
{
    const std::size_t n = v.size();
    for (const auto& g : gens)
        if (g.size() != n) throw input_error("in_nonneg_span: generator length mismatch");
    for (const auto& l : lineality)
        if (l.size() != n) throw input_error("in_nonneg_span: lineality length mismatch");

    const std::size_t g = gens.size(), l = lineality.size();
    RatMatrix a(n, RatVector(g + 2 * l, Rat(0)));
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < g; ++k) a[i][k] = gens[k][i];
        for (std::size_t k = 0; k < l; ++k) {
            a[i][g + 2 * k] = lineality[k][i];
            a[i][g + 2 * k + 1] = -lineality[k][i];
        }
    }
    if (n == 0) return SpanWitness{RatVector(g, Rat(0)), RatVector(l, Rat(0))};
    auto sol = simplex_min(a, v, RatVector(g + 2 * l, Rat(0)));
    if (sol.status != LpStatus::optimal) return std::nullopt;
    SpanWitness w;
    w.alpha.assign(sol.x.begin(), sol.x.begin() + static_cast<std::ptrdiff_t>(g));
    for (std::size_t k = 0; k < l; ++k) w.beta.push_back(sol.x[g + 2 * k] - sol.x[g + 2 * k + 1]);
    return w;
}

} // namespace credal
