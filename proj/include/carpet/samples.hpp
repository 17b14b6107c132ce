#pragma once

#include <cstdint>
#include <vector>

#include "carpet/coding.hpp"
#include "carpet/schedule.hpp"
#include "carpet/word.hpp"

namespace carpet {

// Every truncated word of the given depth over J, in lexicographic order.
// Guard |J|^depth <= 2e7.
std::vector<DigitWord> all_truncations(const GridIFS& ifs, long depth);

// Every prefix in J^prefix_length followed by each tail, as periodic words.
std::vector<DigitWord> prefixed_periodic(const GridIFS& ifs, long prefix_length, std::span<const DigitWord> tails);

// Truncations of the given depth concentrated near the target at time n: a
// quarter uniform, a quarter copying the target after a random prefix, a
// quarter copying it up to a random window position and random afterwards,
// and a quarter carrying a random realizable window pattern.
std::vector<DigitWord> biased_samples(const GridIFS& ifs, const TargetSpec& target, const RateSchedule& schedule,
                                      long n, long depth, std::size_t count, std::uint64_t seed);

}  // namespace carpet
