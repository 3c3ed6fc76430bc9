#pragma once

// OpenMP variants of the offset maps. The serial versions in sigma.hpp are
// the reference; these must agree with them bit for bit.

#include <span>
#include <vector>

#include "daestruct/sigma.hpp"

namespace daestruct {

enum class Exec { serial, parallel };

/// Column-parallel map_d. Same contract and errors as map_d.
std::vector<Order> map_d_parallel(const SignatureMatrix& sigma, std::span<const Order> c);

/// Row-parallel map_c.
std::vector<Order> map_c_parallel(const SignatureMatrix& sigma, const Transversal& t,
                                  std::span<const Order> d);

std::vector<Order> phi_parallel(const SignatureMatrix& sigma, const Transversal& t,
                                std::span<const Order> c);

/// Dispatch helper used by the solvers.
std::vector<Order> phi(const SignatureMatrix& sigma, const Transversal& t,
                       std::span<const Order> c, Exec exec);
std::vector<Order> map_d(const SignatureMatrix& sigma, std::span<const Order> c, Exec exec);

/// Number of OpenMP threads a parallel region would use (1 without OpenMP).
int max_threads() noexcept;

}  // namespace daestruct
