#pragma once
#include <cstddef>
#include <cstdint>

namespace cyclepart::kernels {

// Word-level counting kernels used by the bitset layer. Each operation has a
// portable scalar implementation and, on x86-64 machines that support it, an
// AVX2 implementation. Dispatch happens once at startup; callers always go
// through the generic entry points.

std::size_t count_ones_scalar(const std::uint64_t* w, std::size_t nwords);
std::size_t count_and_scalar(const std::uint64_t* a, const std::uint64_t* b,
                             std::size_t nwords);
std::size_t count_andnot_scalar(const std::uint64_t* a, const std::uint64_t* b,
                                std::size_t nwords);

std::size_t count_ones(const std::uint64_t* w, std::size_t nwords);
std::size_t count_and(const std::uint64_t* a, const std::uint64_t* b,
                      std::size_t nwords);
std::size_t count_andnot(const std::uint64_t* a, const std::uint64_t* b,
                         std::size_t nwords);

// Name of the backend selected at startup: "avx2" or "scalar".
const char* active_backend();

}  // namespace cyclepart::kernels
