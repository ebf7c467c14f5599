#pragma once

#include <vector>

#include "gemlab/arrangement.hpp"

namespace fixtures {

inline gemlab::Arrangement grid(int n, std::vector<gemlab::Value> v) { return gemlab::Arrangement::validate(n, std::move(v)); }

inline gemlab::Arrangement lo_shu() { return grid(3, {2, 7, 6, 9, 5, 1, 4, 3, 8}); }
inline gemlab::Arrangement balanced3() { return grid(3, {1, 3, 9, 8, 6, 5, 7, 4, 2}); }
inline gemlab::Arrangement lowmode4() { return grid(4, {9, 4, 12, 3, 16, 1, 14, 7, 10, 15, 11, 8, 2, 5, 6, 13}); }
inline gemlab::Arrangement row_major3() { return gemlab::Arrangement::identity(3); }

}  // namespace fixtures
