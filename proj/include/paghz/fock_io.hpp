#ifndef PAGHZ_FOCK_IO_HPP
#define PAGHZ_FOCK_IO_HPP

#include <iosfwd>
#include <string>

#include "paghz/state.hpp"

namespace paghz {

// Golden-file layouts for FockTensor.
//
// Binary (little-endian): int32 cutoff, int32 r, int32 s, int32 t,
// float64 phi, float64 re(alpha), float64 im(alpha), then cutoff^3 pairs
// (re, im) of float64 in row-major [n1][n2][n3] order.
//
// JSON: {"cutoff", "r", "s", "t", "phi", "re_alpha", "im_alpha",
//        "coeffs": [re0, im0, re1, im1, ...]}.
//
// Only normalized coefficients are stored; on load raw_norm_sq is the stored
// sum |c|^2 and tail_mass is recomputed from the outer two shells.

void write_fock_binary(std::ostream& out, const FockTensor& tensor);
FockTensor read_fock_binary(std::istream& in);

std::string fock_to_json(const FockTensor& tensor);
FockTensor fock_from_json(const std::string& text);

}  // namespace paghz

#endif  // PAGHZ_FOCK_IO_HPP
