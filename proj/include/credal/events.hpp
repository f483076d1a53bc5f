#pragma once

// Events over a finite outcome space are bitmasks; outcome i is bit i.

#include <bit>
#include <cstdint>
#include <string>
#include <vector>

#include "credal/exactla.hpp"

namespace credal {

using Event = std::uint32_t;

inline constexpr std::size_t max_outcomes = 24;

inline Event full_event(std::size_t n) { return n >= 32 ? ~Event{0} : (Event{1} << n) - 1; }
inline Event singleton(std::size_t i) { return Event{1} << i; }
inline Event complement(Event a, std::size_t n) { return full_event(n) & ~a; }
inline bool contains(Event a, std::size_t i) { return (a >> i) & 1U; }
inline bool is_subset(Event a, Event b) { return (a & ~b) == 0; }
inline std::size_t cardinality(Event a) { return static_cast<std::size_t>(std::popcount(a)); }

inline RatVector indicator(std::size_t n, Event a)
{
    RatVector v(n, Rat(0));
    for (std::size_t i = 0; i < n; ++i)
        if (contains(a, i)) v[i] = 1;
    return v;
}

inline RatVector ones(std::size_t n) { return RatVector(n, Rat(1)); }

inline std::vector<std::size_t> members(Event a, std::size_t n)
{
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n; ++i)
        if (contains(a, i)) out.push_back(i);
    return out;
}

} // namespace credal
