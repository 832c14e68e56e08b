#pragma once

#include <vector>

#include "cyberops/mentors/policy.hpp"

namespace cyberops::collab {

// Merge per-mentor suggestion lists into one ranked list.
//
// Duplicate actions keep the highest confidence (ties keep the copy from the
// earlier mentor in configuration order). The merged list is sorted by
// confidence descending, then mentor configuration order ascending, then
// action ordinal ascending, so equal inputs always produce equal output.
std::vector<mentors::Suggestion> aggregate(
    const std::vector<std::vector<mentors::Suggestion>>& per_mentor, int host_count);

}  // namespace cyberops::collab
