#pragma once

#include <vector>

#include "pir/matz.hpp"
#include "pir/pir.hpp"

// Golden vectors for the m = 15, n = 13, t = 3, s = 2, r = 1, L = 1 worked
// instance. Coefficient layout: index j holds the coefficient of x^j. The
// transcription is validated end to end by re-deriving Q from the listed
// polynomials (test_pir.cpp).
namespace toy {

using pir::Index;
using pir::MatZ;
using pir::Scalar;
using pir::VecZ;

inline constexpr Index kN = 13;
inline constexpr Scalar kM = 15;

VecZ vec13(std::initializer_list<Scalar> lowest_first);

// inner code components: g1 over Z_3, g2 over Z_5, and their CRT combination
VecZ g1();      // x^7+x^5+x^4+2x^3+2x^2+2
VecZ g2();      // x^9+2x^8+4x^7+3x^5+2x^4+x^2+3x+4
VecZ g_in();    // 6x^9+12x^8+4x^7+13x^5+7x^4+5x^3+11x^2+3x+14

// outer constituents
VecZ g_tilde1();
VecZ g_tilde2();

// query randomness (file-major pairs: a^1 = (rows 0,1), a^2 = (2,3), ...)
std::vector<VecZ> a_polys();  // 6
std::vector<VecZ> e_polys();  // 6
VecZ u11();

// intermediate and final golden values
std::vector<VecZ> delta_polys();  // 6
MatZ q_matrix();                  // 3 x 52
MatZ db_row();                    // 1 x 3, [1 2 1]
VecZ r_row();                     // 52 entries
std::vector<VecZ> r1_r2_polys();  // r11, r12, r21, r22
std::vector<VecZ> s_polys();      // S = R2 - R1 G_OUT, two entries
MatZ h_in();                      // 9 x 13 parity check as printed
VecZ recovery_vector();           // S block 1 as a row, 13 entries
VecZ recovery_syndrome();         // its product with H^T, 9 entries

// assembled protocol objects
pir::PirParams params(pir::Rng& rng);
pir::QueryStreams streams();

}  // namespace toy
