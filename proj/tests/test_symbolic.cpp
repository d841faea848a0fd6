#include <doctest.h>

#include <cmath>

#include "shadowlab/error.hpp"
#include "shadowlab/rng.hpp"
#include "shadowlab/symbolic.hpp"
#include "shadowlab/system.hpp"

using namespace shadowlab;

namespace {

// Brute-force first-disagreement scan used as the oracle against the exact
// representation-aware comparison.
double naive_distance(const SymbolicPoint& a, const SymbolicPoint& b, std::size_t depth) {
    for (std::size_t i = 0; i < depth; ++i)
        if (a.at(i) != b.at(i)) return std::ldexp(1.0, -static_cast<int>(i));
    return 0.0;
}

SymbolicPoint random_periodic_point(Rng& rng, int alphabet) {
    Word pre(rng.next_below(6)), per(1 + rng.next_below(4));
    for (auto& s : pre) s = static_cast<Symbol>(rng.next_below(alphabet));
    for (auto& s : per) s = static_cast<Symbol>(rng.next_below(alphabet));
    return SymbolicPoint::periodic(pre, per);
}

} // namespace

TEST_CASE("symbolic point basic access and shifting") {
    const auto x = SymbolicPoint::periodic({0, 1, 1}, {2});
    CHECK(x.at(0) == 0);
    CHECK(x.at(2) == 1);
    CHECK(x.at(3) == 2);
    CHECK(x.at(1000) == 2);
    CHECK(x.horizon() == kInfiniteHorizon);

    const auto y = x.shifted(2);
    CHECK(y.at(0) == 1);
    CHECK(y.at(1) == 2);

    const auto f = SymbolicPoint::finite({0, 1, 0});
    CHECK(f.horizon() == 3);
    CHECK_THROWS_AS((void)f.at(3), Error);
    CHECK(f.shifted(2).horizon() == 1);
}

TEST_CASE("full shift metric matches the definition") {
    auto sys = make_full_shift(2);
    // x = 0111..., y = 0100...: first disagreement at index 2.
    const Point x = SymbolicPoint::periodic({0}, {1});
    const Point y = SymbolicPoint::periodic({0, 1}, {0});
    CHECK(sys->distance(x, y) == 0.25);
    CHECK(sys->distance(x, x) == 0.0);

    // k=3: x = (012)^inf vs its shift disagree at index 0.
    auto sys3 = make_full_shift(3);
    const Point z = SymbolicPoint::periodic({}, {0, 1, 2});
    const Point sz = sys3->step(z);
    CHECK(sys3->distance(z, sz) == 1.0);
    const auto& a = as_symbolic(z);
    const auto& b = as_symbolic(sz);
    CHECK(sys3->distance(z, sz) == naive_distance(a, b, 64));
}

TEST_CASE("make_full_shift rejects tiny alphabets") {
    CHECK_THROWS_WITH_AS((void)make_full_shift(1), doctest::Contains("invalid-alphabet"), Error);
}

TEST_CASE("periodic equality is decided through the lcm window") {
    const auto a = SymbolicPoint::periodic({}, {0, 1});
    const auto b = SymbolicPoint::periodic({0}, {1, 0});
    CHECK(SymbolicPoint::equal(a, b));
    const auto c = SymbolicPoint::periodic({}, {0, 1, 0, 1});
    CHECK(SymbolicPoint::equal(a, c));
    const auto d = SymbolicPoint::periodic({}, {0, 1, 1});
    CHECK_FALSE(SymbolicPoint::equal(a, d));
}

TEST_CASE("distance bounds on finite-horizon points stay honest") {
    const auto a = SymbolicPoint::finite({0, 1, 0, 1});
    const auto b = SymbolicPoint::finite({0, 1, 0, 1, 1});
    const auto d = symbolic_distance_bound(a, b);
    CHECK(d.lower == 0.0);
    CHECK(d.upper == std::ldexp(1.0, -4));
    CHECK_FALSE(d.exact());
    CHECK_THROWS_WITH_AS((void)symbolic_distance(a, b), doctest::Contains("horizon-exhausted"),
                         Error);
}

TEST_CASE("metric axioms hold exactly on sampled triples") {
    auto sys = make_full_shift(2);
    Rng rng(20260810);
    for (int trial = 0; trial < 10000; ++trial) {
        const Point x = random_periodic_point(rng, 2);
        const Point y = random_periodic_point(rng, 2);
        const Point z = random_periodic_point(rng, 2);
        const double dxy = sys->distance(x, y);
        const double dyx = sys->distance(y, x);
        CHECK(dxy == dyx);
        CHECK((dxy == 0.0) == SymbolicPoint::equal(as_symbolic(x), as_symbolic(y)));
        CHECK(sys->distance(x, z) <= dxy + sys->distance(y, z));
    }
}

TEST_CASE("shift map is 2-Lipschitz on sampled pairs") {
    auto sys = make_full_shift(3);
    Rng rng(7);
    for (int trial = 0; trial < 10000; ++trial) {
        const Point x = random_periodic_point(rng, 3);
        const Point y = random_periodic_point(rng, 3);
        CHECK(sys->distance(sys->step(x), sys->step(y)) <= 2.0 * sys->distance(x, y));
    }
}

TEST_CASE("point literals round-trip") {
    const auto x = SymbolicPoint::parse("011|10");
    CHECK(x.at(0) == 0);
    CHECK(x.at(3) == 1);
    CHECK(x.at(4) == 0);
    CHECK(x.to_string() == "011|10");
    const auto f = SymbolicPoint::parse("0101");
    CHECK(f.horizon() == 4);
    CHECK(f.to_string() == "0101");
    // Shift into the period rotates the printed form.
    CHECK(x.shifted(4).to_string() == "|01");
}

TEST_CASE("sft admissibility and emptiness") {
    SftSpec golden{2, {{1, 1}}};
    auto sys = make_sft(golden);
    const Point ok = SymbolicPoint::periodic({}, {1, 0});
    const Point bad = SymbolicPoint::periodic({0, 1, 1}, {0});
    CHECK(sys->contains(ok));
    CHECK_FALSE(sys->contains(bad));

    SftSpec dead{2, {{0}, {1}}};
    CHECK_THROWS_WITH_AS((void)make_sft(dead), doctest::Contains("empty-system"), Error);
}

TEST_CASE("golden mean word enumeration counts Fibonacci") {
    auto sys = make_sft(SftSpec{2, {{1, 1}}});
    const auto* shift = dynamic_cast<const ShiftSystem*>(sys.get());
    REQUIRE(shift != nullptr);
    // Oracle: enumerate all 16 raw words, drop those containing 11.
    const auto words4 = shift->words(4, 1u << 12);
    CHECK(words4.size() == 8);
    std::size_t oracle = 0;
    for (int v = 0; v < 16; ++v) {
        const bool has11 = ((v & 0b11) == 0b11) || ((v & 0b110) == 0b110) || ((v & 0b1100) == 0b1100);
        if (!has11) ++oracle;
    }
    CHECK(oracle == words4.size());
    for (const Word& w : words4) CHECK(shift->word_admissible(w));
}

TEST_CASE("sft membership is shift invariant on sampled points") {
    auto sys = make_sft(SftSpec{2, {{1, 1}}});
    Rng rng(99);
    const auto* shift = dynamic_cast<const ShiftSystem*>(sys.get());
    const auto pool = shift->words(10, 1u << 12);
    for (int trial = 0; trial < 200; ++trial) {
        const Word& w = pool[rng.next_below(pool.size())];
        Point x = SymbolicPoint::periodic(w, {0});
        for (int i = 0; i < 12; ++i) {
            CHECK(sys->contains(x));
            x = sys->step(x);
        }
    }
}

TEST_CASE("recoded sft handles forbidden words longer than two") {
    // Forbidding 101 leaves e.g. 1001 repeated admissible but kills (10)^inf.
    auto sys = make_sft(SftSpec{2, {{1, 0, 1}}});
    CHECK(sys->contains(Point{SymbolicPoint::periodic({}, {1, 0, 0})}));
    CHECK_FALSE(sys->contains(Point{SymbolicPoint::periodic({}, {1, 0})}));
    const auto* shift = dynamic_cast<const ShiftSystem*>(sys.get());
    const auto words = shift->words(3, 64);
    for (const Word& w : words) CHECK(w != Word{1, 0, 1});
    CHECK(words.size() == 7);
}

TEST_CASE("interval homeomorphism orbits move monotonically to an endpoint") {
    auto sys = make_interval_homeo("sqrt");
    const auto orbit = orbit_segment(*sys, Point{0.25}, 3);
    CHECK(as_interval(orbit[1]) == doctest::Approx(0.5));
    CHECK(as_interval(orbit[2]) == doctest::Approx(0.70710678118654752));
    for (std::size_t i = 1; i < orbit.size(); ++i)
        CHECK(as_interval(orbit[i]) > as_interval(orbit[i - 1]));

    // Fixed point stays put.
    const auto zero_orbit = orbit_segment(*sys, Point{0.0}, 5);
    for (const auto& p : zero_orbit) CHECK(as_interval(p) == 0.0);

    // Decreasing variant plunges to 0.
    auto sq = make_interval_homeo("square");
    Point x{0.9};
    for (int i = 0; i < 20; ++i) x = sq->step(x);
    CHECK(as_interval(x) < 1e-6);

    CHECK_THROWS_WITH_AS((void)make_interval_homeo("tan"), doctest::Contains("invalid-homeo"),
                         Error);
    CHECK_THROWS_WITH_AS((void)make_interval_homeo(1.0), doctest::Contains("invalid-homeo"), Error);
}

TEST_CASE("interval metric axioms to 1e-12 on sampled triples") {
    auto sys = make_interval_homeo("sqrt");
    Rng rng(2);
    for (int trial = 0; trial < 10000; ++trial) {
        const Point x{rng.next_unit()}, y{rng.next_unit()}, z{rng.next_unit()};
        CHECK(sys->distance(x, y) == doctest::Approx(sys->distance(y, x)).epsilon(1e-12));
        CHECK(sys->distance(x, z) <= sys->distance(x, y) + sys->distance(y, z) + 1e-12);
    }
}

TEST_CASE("orbit segments over the full shift") {
    auto sys = make_full_shift(2);
    const auto fixed = orbit_segment(*sys, Point{SymbolicPoint::fixed(0)}, 5);
    CHECK(fixed.size() == 5);
    for (const auto& p : fixed) CHECK(sys->distance(p, Point{SymbolicPoint::fixed(0)}) == 0.0);

    const Point two = SymbolicPoint::periodic({}, {0, 1});
    const auto orb = orbit_segment(*sys, two, 2);
    CHECK(sys->distance(orb[1], Point{SymbolicPoint::periodic({}, {1, 0})}) == 0.0);

    auto gm = make_sft(SftSpec{2, {{1, 1}}});
    const auto sft_orbit = orbit_segment(*gm, two, 4);
    for (const auto& p : sft_orbit) CHECK(gm->contains(p));

    CHECK_THROWS_WITH_AS((void)orbit_segment(*sys, Point{0.5}, 3),
                         doctest::Contains("invalid-point"), Error);
}

TEST_CASE("grid map translation wraps on the torus") {
    GridMapSpec spec;
    spec.map = GridMapSpec::Kind::Translation;
    spec.dx = 0.3;
    spec.dy = 0.0;
    spec.g = 4;
    auto sys = make_grid_map(spec);
    const Vec2 p{0.9, 0.5};
    const Vec2 q = as_vec2(sys->step(Point{p}));
    CHECK(q.x == doctest::Approx(0.2));
    CHECK(q.y == 0.5);
    CHECK(sys->distance(Point{Vec2{0.05, 0.0}}, Point{Vec2{0.95, 0.0}}) == doctest::Approx(0.1));
    CHECK(sys->diameter() == doctest::Approx(std::sqrt(0.5)));
}
