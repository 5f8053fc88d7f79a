#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "pants/error.hpp"

namespace pants {

// Compact orientable surface of genus g with n boundary components.
// Punctures and boundary components are not distinguished anywhere in this
// library; both count into `boundaries`.
struct SurfaceType {
    int genus = 0;
    int boundaries = 0;

    friend bool operator==(const SurfaceType&, const SurfaceType&) = default;
    friend auto operator<=>(const SurfaceType&, const SurfaceType&) = default;
};

int euler_characteristic(SurfaceType s);

// True iff chi(s) <= -1; tori, annuli, disks and spheres are the exceptions.
bool admits_pants_decomposition(SurfaceType s);

struct Census {
    int curves = 0; // interior decomposition curves: 3g - 3 + n
    int pants = 0;  // pairs of pants: -chi = 2g - 2 + n
    friend bool operator==(const Census&, const Census&) = default;
};

// Throws NotDecomposable when chi(s) > -1.
Census decomposition_census(SurfaceType s);

SurfaceType parse_surface(std::string_view text); // "(g,n)"
std::string to_string(SurfaceType s);

// Essential simple closed curve on the one-holed torus or four-holed sphere,
// in canonical coprime form: gcd(|p|,|q|) = 1, q >= 0, and q = 0 only as 1/0.
struct Slope {
    long long p = 1;
    long long q = 0;

    Slope() = default;
    Slope(long long p_, long long q_); // normalizes; rejects (0,0)

    friend bool operator==(const Slope&, const Slope&) = default;
    friend auto operator<=>(const Slope&, const Slope&) = default;
};

long long slope_det(Slope a, Slope b); // p*q' - p'*q

// Geometric intersection number of the two curves: |det| on (1,1), 2|det| on
// (0,4). Throws UnsupportedSurface for any other surface type.
long long slope_intersection(SurfaceType s, Slope a, Slope b);

// True iff the pair spans an elementary move edge: intersection 1 on (1,1),
// intersection 2 on (0,4); both reduce to |det| = 1.
bool is_elementary_move(SurfaceType s, Slope a, Slope b);

Slope parse_slope(std::string_view text); // "p/q", integer, or "inf"
std::string to_string(Slope s);

// The four base surfaces a move collection can be supported on.
enum class SupportKind { S11, S04, S05, S12 };

SurfaceType surface_of(SupportKind k);
SupportKind support_kind_of(SurfaceType s); // throws UnsupportedSurface
const char* to_string(SupportKind k);
SupportKind parse_support_kind(std::string_view text); // "(g,n)" restricted

struct SupportId {
    std::string id;
    SupportKind kind = SupportKind::S11;
    friend bool operator==(const SupportId&, const SupportId&) = default;
};

// All canonical slopes with |p| <= bound and |q| <= bound, sorted.
std::vector<Slope> farey_slopes(long long bound);

// Unordered triple of slopes with pairwise |det| = 1.
struct FareyTriangle {
    Slope a, b, c; // sorted: a < b < c
    friend bool operator==(const FareyTriangle&, const FareyTriangle&) = default;
    friend auto operator<=>(const FareyTriangle&, const FareyTriangle&) = default;
};

// Every Farey triangle within the bound, deterministically ordered. The
// parallel variant uses OpenMP when available and returns the same list as
// the serial one; farey_triangles() picks the parallel path for big bounds.
std::vector<FareyTriangle> farey_triangles_serial(long long bound);
std::vector<FareyTriangle> farey_triangles_parallel(long long bound);
std::vector<FareyTriangle> farey_triangles(long long bound);

// The (at most two) slopes completing edge (a,b) to a Farey triangle:
// +-(a+b) and +-(a-b) in canonical form.
std::vector<Slope> farey_triangle_completions(Slope a, Slope b);

// On the four-holed sphere a slope separates the four punctures {1,2,3,4}
// into two pairs, determined by the parity class of (p,q).
//   (even,odd) -> {1,2}|{3,4},  (odd,even) -> {1,3}|{2,4},  (odd,odd) -> {1,4}|{2,3}
// Returns the index pair grouped with puncture 1 (respectively its partner).
std::pair<std::pair<int, int>, std::pair<int, int>> slope_pairing_s04(Slope m);

} // namespace pants
