#ifndef SHADOWLAB_TESTS_HELPERS_HPP
#define SHADOWLAB_TESTS_HELPERS_HPP

#include <functional>
#include <vector>

#include "shadowlab/measures.hpp"
#include "shadowlab/rng.hpp"
#include "shadowlab/system.hpp"

namespace shadowlab::testing {

using PointSampler = std::function<Point(Rng&)>;
using PointPerturber = std::function<Point(Rng&, const Point&)>;

inline PointSampler full_shift_sampler(int alphabet) {
    return [alphabet](Rng& rng) {
        Word pre(rng.next_below(8)), per(1 + rng.next_below(6));
        for (auto& s : pre) s = static_cast<Symbol>(rng.next_below(alphabet));
        for (auto& s : per) s = static_cast<Symbol>(rng.next_below(alphabet));
        return Point{SymbolicPoint::periodic(pre, per)};
    };
}

// Random admissible point of the golden-mean shift (graph walk, 0-tail).
inline PointSampler golden_mean_sampler() {
    return [](Rng& rng) {
        Word w;
        Symbol prev = 0;
        const std::size_t len = 4 + rng.next_below(24);
        for (std::size_t i = 0; i < len; ++i) {
            const Symbol s = (prev == 1) ? 0 : static_cast<Symbol>(rng.next_below(2));
            w.push_back(s);
            prev = s;
        }
        return Point{SymbolicPoint::periodic(w, {0})};
    };
}

inline PointSampler interval_sampler() {
    return [](Rng& rng) { return Point{0.001 + 0.998 * rng.next_unit()}; };
}

inline PointSampler grid_sampler() {
    return [](Rng& rng) { return Point{Vec2{rng.next_unit(), rng.next_unit()}}; };
}

// Keeps a prefix of the symbol stream and replaces the rest.
inline PointPerturber symbolic_perturber(int alphabet, bool golden = false) {
    return [alphabet, golden](Rng& rng, const Point& x) {
        const SymbolicPoint& s = as_symbolic(x);
        const std::size_t keep = 2 + rng.next_below(30);
        Word pre = s.prefix(keep);
        Word per(1 + rng.next_below(4));
        Symbol prev = pre.back();
        for (auto& sym : per) {
            Symbol candidate = static_cast<Symbol>(rng.next_below(alphabet));
            if (golden && prev == 1 && candidate == 1) candidate = 0;
            sym = candidate;
            prev = candidate;
        }
        if (golden && per.back() == 1 && per.front() == 1) per.back() = 0;
        return Point{SymbolicPoint::periodic(pre, per)};
    };
}

inline PointPerturber interval_perturber() {
    return [](Rng& rng, const Point& x) {
        const double u = rng.next_in(-0.05, 0.05);
        return Point{std::min(1.0, std::max(0.0, as_interval(x) + u))};
    };
}

inline PointPerturber grid_perturber() {
    return [](Rng& rng, const Point& x) {
        const Vec2& v = as_vec2(x);
        auto clamp = [](double t) { return std::min(1.0, std::max(0.0, t)); };
        return Point{Vec2{clamp(v.x + rng.next_in(-0.05, 0.05)),
                          clamp(v.y + rng.next_in(-0.05, 0.05))}};
    };
}

struct Lemma21Stats {
    long long instances = 0;
    long long violations = 0;
};

// Randomized check of the three empirical-measure estimates, all comparisons
// widened by the series tail at the given truncation.
inline Lemma21Stats run_lemma21_suite(const System& system, std::uint64_t seed, int instances,
                                      const PointSampler& sample, const PointPerturber& perturb,
                                      int J = 20) {
    const TestFunctionFamily family = TestFunctionFamily::for_system(system, J);
    const double tail = measure_tail_bound(J);
    Rng rng(seed);
    Lemma21Stats stats;
    for (int trial = 0; trial < instances; ++trial) {
        ++stats.instances;
        const Point x = sample(rng);

        // (1) rho(E_m(x), E_n(f^k(x))) <= (2/n)(n - m + k).
        const long long n = 10 + static_cast<long long>(rng.next_below(191));
        const long long m = 2 + static_cast<long long>(rng.next_below(static_cast<std::uint64_t>(n - 2)));
        const long long k = static_cast<long long>(rng.next_below(static_cast<std::uint64_t>(m)));
        const auto em = empirical_measure(system, x, static_cast<std::size_t>(m));
        const auto en = empirical_measure(system, system.iterate(x, static_cast<std::size_t>(k)),
                                          static_cast<std::size_t>(n));
        const double lhs1 = weak_star_distance(family, em, en, J).value;
        const double rhs1 = (2.0 / static_cast<double>(n)) * static_cast<double>(n - m + k);
        if (!(lhs1 <= rhs1 + 2.0 * tail)) ++stats.violations;

        // (2) y in B_p(x, eps) in the rho metric forces rho(E_p(y), E_p(x)) < eps.
        const std::size_t p = 1 + rng.next_below(50);
        const Point y = perturb(rng, x);
        const double dp = rho_orbit_distance(system, family, x, y, p, J).value;
        const double eps = dp + tail + 1e-9 + 0.05 * dp;
        const auto epx = empirical_measure(system, x, p);
        const auto epy = empirical_measure(system, y, p);
        const double lhs2 = weak_star_distance(family, epy, epx, J).value;
        if (!(lhs2 < eps + 2.0 * tail)) ++stats.violations;

        // (3) stretching the comparison length to q <= (1 + eps/2) p doubles the bound.
        const long long qmax = static_cast<long long>(std::floor((1.0 + eps / 2.0) * static_cast<double>(p)));
        const long long q = static_cast<long long>(p) +
                            (qmax > static_cast<long long>(p)
                                 ? static_cast<long long>(rng.next_below(
                                       static_cast<std::uint64_t>(qmax - static_cast<long long>(p) + 1)))
                                 : 0);
        const auto eqy = empirical_measure(system, y, static_cast<std::size_t>(q));
        const double lhs3 = weak_star_distance(family, eqy, epx, J).value;
        if (!(lhs3 < 2.0 * eps + 2.0 * tail)) ++stats.violations;
    }
    return stats;
}

} // namespace shadowlab::testing

#endif
