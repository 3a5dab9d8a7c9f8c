#pragma once

#include "qfm/form.hpp"
#include "qfm/local.hpp"

namespace qfm {

// dim q_an over Q: the maximum of the local anisotropic dimensions.
int global_anisotropic_dimension(const QuadraticForm& q);
int global_witt_index(const QuadraticForm& q);
bool is_isotropic(const QuadraticForm& q);

// Local profiles at every relevant place class, in place order.
std::vector<LocalProfile> local_profiles(const QuadraticForm& q);

}  // namespace qfm
