#include "pants/surface.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace pants {

const char* to_string(Err e) {
    switch (e) {
    case Err::Parse: return "Parse";
    case Err::NotDecomposable: return "NotDecomposable";
    case Err::UnsupportedSurface: return "UnsupportedSurface";
    case Err::IllegalMove: return "IllegalMove";
    case Err::NoMatch: return "NoMatch";
    case Err::NotAPath: return "NotAPath";
    case Err::NotAdjacent: return "NotAdjacent";
    case Err::NotABijection: return "NotABijection";
    case Err::InvalidIncidence: return "InvalidIncidence";
    case Err::InvalidTags: return "InvalidTags";
    case Err::NotEligible: return "NotEligible";
    case Err::InvalidDecomposition: return "InvalidDecomposition";
    case Err::InvalidComplex: return "InvalidComplex";
    case Err::Stuck: return "Stuck";
    case Err::UnannotatedCrossing: return "UnannotatedCrossing";
    case Err::ReplayMismatch: return "ReplayMismatch";
    case Err::VerificationFailed: return "VerificationFailed";
    case Err::InvalidSite: return "InvalidSite";
    case Err::OutOfRange: return "OutOfRange";
    }
    return "Unknown";
}

int euler_characteristic(SurfaceType s) { return 2 - 2 * s.genus - s.boundaries; }

bool admits_pants_decomposition(SurfaceType s) { return euler_characteristic(s) <= -1; }

Census decomposition_census(SurfaceType s) {
    if (!admits_pants_decomposition(s))
        fail(Err::NotDecomposable, to_string(s) + " has chi = " +
                                       std::to_string(euler_characteristic(s)));
    Census c;
    c.pants = -euler_characteristic(s);
    c.curves = 3 * s.genus - 3 + s.boundaries;
    return c;
}

namespace {

long long parse_int(std::string_view text, std::string_view what) {
    long long value = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size())
        fail(Err::Parse, "bad integer in " + std::string(what) + ": '" + std::string(text) + "'");
    return value;
}

} // namespace

SurfaceType parse_surface(std::string_view text) {
    if (text.size() < 5 || text.front() != '(' || text.back() != ')')
        fail(Err::Parse, "surface type must look like (g,n): '" + std::string(text) + "'");
    auto body = text.substr(1, text.size() - 2);
    auto comma = body.find(',');
    if (comma == std::string_view::npos)
        fail(Err::Parse, "surface type must look like (g,n): '" + std::string(text) + "'");
    long long g = parse_int(body.substr(0, comma), "genus");
    long long n = parse_int(body.substr(comma + 1), "boundary count");
    if (g < 0 || n < 0)
        fail(Err::Parse, "surface type needs nonnegative entries: '" + std::string(text) + "'");
    return SurfaceType{static_cast<int>(g), static_cast<int>(n)};
}

std::string to_string(SurfaceType s) {
    return "(" + std::to_string(s.genus) + "," + std::to_string(s.boundaries) + ")";
}

Slope::Slope(long long p_, long long q_) : p(p_), q(q_) {
    if (p == 0 && q == 0) fail(Err::Parse, "slope 0/0 is not a curve");
    long long g = std::gcd(p < 0 ? -p : p, q < 0 ? -q : q);
    p /= g;
    q /= g;
    if (q < 0 || (q == 0 && p < 0)) {
        p = -p;
        q = -q;
    }
}

long long slope_det(Slope a, Slope b) { return a.p * b.q - b.p * a.q; }

long long slope_intersection(SurfaceType s, Slope a, Slope b) {
    long long d = slope_det(a, b);
    if (d < 0) d = -d;
    if (s == SurfaceType{1, 1}) return d;
    if (s == SurfaceType{0, 4}) return 2 * d;
    fail(Err::UnsupportedSurface, "slope model only covers (1,1) and (0,4), got " + to_string(s));
}

bool is_elementary_move(SurfaceType s, Slope a, Slope b) {
    long long target = s == SurfaceType{1, 1} ? 1 : 2;
    return slope_intersection(s, a, b) == target;
}

Slope parse_slope(std::string_view text) {
    if (text == "inf") return Slope{1, 0};
    auto slash = text.find('/');
    if (slash == std::string_view::npos) return Slope{parse_int(text, "slope"), 1};
    long long p = parse_int(text.substr(0, slash), "slope numerator");
    long long q = parse_int(text.substr(slash + 1), "slope denominator");
    if (p == 0 && q == 0) fail(Err::Parse, "slope 0/0 is not a curve");
    return Slope{p, q};
}

std::string to_string(Slope s) {
    return std::to_string(s.p) + "/" + std::to_string(s.q);
}

SurfaceType surface_of(SupportKind k) {
    switch (k) {
    case SupportKind::S11: return {1, 1};
    case SupportKind::S04: return {0, 4};
    case SupportKind::S05: return {0, 5};
    case SupportKind::S12: return {1, 2};
    }
    fail(Err::UnsupportedSurface, "bad support kind");
}

SupportKind support_kind_of(SurfaceType s) {
    if (s == SurfaceType{1, 1}) return SupportKind::S11;
    if (s == SurfaceType{0, 4}) return SupportKind::S04;
    if (s == SurfaceType{0, 5}) return SupportKind::S05;
    if (s == SurfaceType{1, 2}) return SupportKind::S12;
    fail(Err::UnsupportedSurface, to_string(s) + " is not a move support");
}

const char* to_string(SupportKind k) {
    switch (k) {
    case SupportKind::S11: return "(1,1)";
    case SupportKind::S04: return "(0,4)";
    case SupportKind::S05: return "(0,5)";
    case SupportKind::S12: return "(1,2)";
    }
    return "?";
}

SupportKind parse_support_kind(std::string_view text) {
    return support_kind_of(parse_surface(text));
}

std::vector<Slope> farey_slopes(long long bound) {
    std::vector<Slope> out;
    for (long long q = 0; q <= bound; ++q) {
        for (long long p = -bound; p <= bound; ++p) {
            if (p == 0 && q == 0) continue;
            if (std::gcd(p < 0 ? -p : p, q) != 1) continue;
            if (q == 0 && p != 1) continue;
            if (q > 0 || p == 1) out.push_back(Slope{p, q});
        }
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<Slope> farey_triangle_completions(Slope a, Slope b) {
    std::vector<Slope> out;
    long long cands[2][2] = {{a.p + b.p, a.q + b.q}, {a.p - b.p, a.q - b.q}};
    for (auto& c : cands) {
        if (c[0] == 0 && c[1] == 0) continue;
        Slope z{c[0], c[1]};
        if (z == a || z == b) continue;
        out.push_back(z);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

namespace {

FareyTriangle make_triangle(Slope a, Slope b, Slope c) {
    Slope v[3] = {a, b, c};
    std::sort(v, v + 3);
    return FareyTriangle{v[0], v[1], v[2]};
}

std::vector<FareyTriangle> triangles_from_slopes(const std::vector<Slope>& slopes,
                                                 long long bound, bool parallel) {
    std::vector<std::vector<FareyTriangle>> buckets(slopes.size());
    auto body = [&](std::size_t i) {
        const Slope a = slopes[i];
        for (std::size_t j = i + 1; j < slopes.size(); ++j) {
            const Slope b = slopes[j];
            long long d = slope_det(a, b);
            if (d != 1 && d != -1) continue;
            for (Slope z : farey_triangle_completions(a, b)) {
                if (z.p > bound || z.p < -bound || z.q > bound) continue;
                FareyTriangle t = make_triangle(a, b, z);
                // keep each triangle once: when (a,b) is its smallest edge
                if (t.a == a && t.b == b) buckets[i].push_back(t);
            }
        }
    };
    if (parallel) {
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
        for (long long i = 0; i < static_cast<long long>(slopes.size()); ++i)
            body(static_cast<std::size_t>(i));
    } else {
        for (std::size_t i = 0; i < slopes.size(); ++i) body(i);
    }
    std::vector<FareyTriangle> out;
    for (auto& b : buckets) out.insert(out.end(), b.begin(), b.end());
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

} // namespace

std::vector<FareyTriangle> farey_triangles_serial(long long bound) {
    return triangles_from_slopes(farey_slopes(bound), bound, false);
}

std::vector<FareyTriangle> farey_triangles_parallel(long long bound) {
    return triangles_from_slopes(farey_slopes(bound), bound, true);
}

std::vector<FareyTriangle> farey_triangles(long long bound) {
    return bound >= 8 ? farey_triangles_parallel(bound) : farey_triangles_serial(bound);
}

std::pair<std::pair<int, int>, std::pair<int, int>> slope_pairing_s04(Slope m) {
    bool podd = (m.p % 2) != 0;
    bool qodd = (m.q % 2) != 0;
    if (!podd && qodd) return {{1, 2}, {3, 4}};
    if (podd && !qodd) return {{1, 3}, {2, 4}};
    return {{1, 4}, {2, 3}};
}

} // namespace pants
