#include "shadowlab/measures.hpp"

#include <algorithm>
#include <cstring>
#include <unordered_map>

#include "shadowlab/rng.hpp"

namespace shadowlab {

// --- test function family ----------------------------------------------------

TestFunctionFamily TestFunctionFamily::cylinders(int alphabet, int max_j) {
    require(alphabet >= 2, "invalid-alphabet", "cylinder family needs alphabet >= 2");
    TestFunctionFamily fam;
    fam.kind_ = Kind::Cylinders;
    fam.alphabet_ = alphabet;
    fam.max_j_ = max_j;
    Word w{0};
    for (int j = 0; j < max_j; ++j) {
        fam.words_.push_back(w);
        // Next word: length-then-lexicographic successor.
        std::size_t i = w.size();
        while (i > 0) {
            if (++w[i - 1] < alphabet) break;
            w[i - 1] = 0;
            --i;
        }
        if (i == 0) w.assign(w.size() + 1, 0);
    }
    return fam;
}

namespace {

void push_hat_level(std::vector<TestFunctionFamily::Hat>& hats, int level, bool planar, int max_j) {
    const int n = 1 << level;
    const double scale = static_cast<double>(n);
    if (!planar) {
        for (int i = 0; i <= n && static_cast<int>(hats.size()) < max_j; ++i)
            hats.push_back({static_cast<double>(i) / n, 0.0, scale});
    } else {
        for (int iy = 0; iy <= n; ++iy)
            for (int ix = 0; ix <= n && static_cast<int>(hats.size()) < max_j; ++ix)
                hats.push_back({static_cast<double>(ix) / n, static_cast<double>(iy) / n, scale});
    }
}

double hat1d(double x, double c, double scale) {
    const double v = 1.0 - scale * std::fabs(x - c);
    return v > 0.0 ? v : 0.0;
}

} // namespace

TestFunctionFamily TestFunctionFamily::interval_hats(int max_j) {
    TestFunctionFamily fam;
    fam.kind_ = Kind::IntervalHats;
    fam.max_j_ = max_j;
    for (int level = 0; static_cast<int>(fam.hats_.size()) < max_j; ++level)
        push_hat_level(fam.hats_, level, false, max_j);
    return fam;
}

TestFunctionFamily TestFunctionFamily::grid_hats(int max_j) {
    TestFunctionFamily fam;
    fam.kind_ = Kind::GridHats;
    fam.max_j_ = max_j;
    for (int level = 0; static_cast<int>(fam.hats_.size()) < max_j; ++level)
        push_hat_level(fam.hats_, level, true, max_j);
    return fam;
}

TestFunctionFamily TestFunctionFamily::for_system(const System& system, int max_j) {
    switch (system.kind()) {
        case SystemKind::FullShift:
        case SystemKind::Sft:
            return cylinders(dynamic_cast<const ShiftSystem&>(system).alphabet_size(), max_j);
        case SystemKind::IntervalHomeo: return interval_hats(max_j);
        case SystemKind::GridMap: return grid_hats(max_j);
    }
    fail("invalid-argument", "unknown system kind");
}

double TestFunctionFamily::sup_norm(int j) const {
    require(j >= 1 && j <= max_j_, "invalid-argument", "test function index out of range");
    return 1.0;
}

const Word& TestFunctionFamily::cylinder_word(int j) const {
    require(kind_ == Kind::Cylinders, "invalid-argument", "not a cylinder family");
    require(j >= 1 && j <= max_j_, "invalid-argument", "test function index out of range");
    return words_[static_cast<std::size_t>(j - 1)];
}

const TestFunctionFamily::Hat& TestFunctionFamily::hat(int j) const {
    require(kind_ != Kind::Cylinders, "invalid-argument", "not a hat family");
    require(j >= 1 && j <= max_j_, "invalid-argument", "test function index out of range");
    return hats_[static_cast<std::size_t>(j - 1)];
}

double TestFunctionFamily::evaluate(int j, const Point& x) const {
    switch (kind_) {
        case Kind::Cylinders: {
            const Word& w = cylinder_word(j);
            const SymbolicPoint& p = as_symbolic(x);
            for (std::size_t i = 0; i < w.size(); ++i)
                if (p.at(i) != w[i]) return 0.0;
            return 1.0;
        }
        case Kind::IntervalHats: {
            const Hat& h = hat(j);
            return hat1d(as_interval(x), h.cx, h.scale);
        }
        case Kind::GridHats: {
            const Hat& h = hat(j);
            const Vec2& v = as_vec2(x);
            return hat1d(v.x, h.cx, h.scale) * hat1d(v.y, h.cy, h.scale);
        }
    }
    return 0.0;
}

// --- empirical measures -------------------------------------------------------

namespace {

std::uint64_t point_digest(const Point& p) {
    if (const auto* s = std::get_if<SymbolicPoint>(&p)) return s->prefix_digest();
    if (const auto* x = std::get_if<double>(&p)) {
        std::uint64_t bits;
        std::memcpy(&bits, x, sizeof bits);
        return bits * 0x9e3779b97f4a7c15ULL;
    }
    const Vec2& v = std::get<Vec2>(p);
    std::uint64_t bx, by;
    std::memcpy(&bx, &v.x, sizeof bx);
    std::memcpy(&by, &v.y, sizeof by);
    return bx * 0x9e3779b97f4a7c15ULL ^ (by + 0x165667b19e3779f9ULL);
}

bool same_point(const System& system, const Point& a, const Point& b) {
    if (a.index() != b.index()) return false;
    if (const auto* s = std::get_if<SymbolicPoint>(&a))
        return SymbolicPoint::equal(*s, std::get<SymbolicPoint>(b));
    return system.distance(a, b) == 0.0;
}

} // namespace

EmpiricalMeasure EmpiricalMeasure::dirac(Point at) {
    EmpiricalMeasure m;
    m.atoms_.push_back({std::move(at), 1});
    m.denominator_ = 1;
    return m;
}

EmpiricalMeasure EmpiricalMeasure::from_points(const System& system, std::vector<Point> points) {
    require(!points.empty(), "invalid-argument", "empty atom list");
    EmpiricalMeasure m;
    m.denominator_ = static_cast<long long>(points.size());
    std::unordered_map<std::uint64_t, std::vector<std::size_t>> buckets;
    for (auto& p : points) {
        auto& bucket = buckets[point_digest(p)];
        bool merged = false;
        for (std::size_t idx : bucket) {
            if (same_point(system, m.atoms_[idx].where, p)) {
                ++m.atoms_[idx].multiplicity;
                merged = true;
                break;
            }
        }
        if (!merged) {
            bucket.push_back(m.atoms_.size());
            m.atoms_.push_back({std::move(p), 1});
        }
    }
    return m;
}

double EmpiricalMeasure::integrate(const TestFunctionFamily& family, int j) const {
    double sum = 0.0;
    for (const Atom& a : atoms_)
        sum += static_cast<double>(a.multiplicity) * family.evaluate(j, a.where);
    return sum / static_cast<double>(denominator_);
}

EmpiricalMeasure empirical_measure(const System& system, const Point& x, std::size_t n) {
    require(n >= 1, "invalid-argument", "empirical measure needs n >= 1");
    if (const auto* s = std::get_if<SymbolicPoint>(&x))
        require(s->horizon() >= n, "horizon-exhausted",
                "orbit of length " + std::to_string(n) + " exceeds the point horizon");
    return EmpiricalMeasure::from_points(system, orbit_segment(system, x, n));
}

// --- targets -------------------------------------------------------------------

BernoulliTarget::BernoulliTarget(std::vector<double> probabilities) : p_(std::move(probabilities)) {
    require(p_.size() >= 2, "invalid-argument", "Bernoulli target needs >= 2 symbols");
    double total = 0.0;
    for (double v : p_) {
        require(v >= 0.0, "invalid-argument", "negative probability");
        total += v;
    }
    require(std::fabs(total - 1.0) <= 1e-12, "invalid-argument", "probabilities must sum to 1");
}

BernoulliTarget BernoulliTarget::uniform(int alphabet) {
    return BernoulliTarget(
        std::vector<double>(static_cast<std::size_t>(alphabet), 1.0 / alphabet));
}

double BernoulliTarget::integrate(const TestFunctionFamily& family, int j) const {
    const Word& w = family.cylinder_word(j);
    double prob = 1.0;
    for (Symbol s : w) {
        require(s < p_.size(), "invalid-argument", "cylinder symbol outside Bernoulli alphabet");
        prob *= p_[s];
    }
    return prob;
}

double DiracTarget::integrate(const TestFunctionFamily& family, int j) const {
    return family.evaluate(j, at_);
}

// --- distances -------------------------------------------------------------------

MeasureDistance rho_point_distance(const TestFunctionFamily& family, const Point& a,
                                   const Point& b, int J) {
    double value = 0.0;
    for (int j = 1; j <= J; ++j)
        value += std::fabs(family.evaluate(j, a) - family.evaluate(j, b)) / std::ldexp(1.0, j);
    return {value, J, measure_tail_bound(J)};
}

MeasureDistance rho_orbit_distance(const System& system, const TestFunctionFamily& family,
                                   const Point& x, const Point& y, std::size_t p, int J) {
    require(p >= 1, "invalid-argument", "need p >= 1");
    Point a = x, b = y;
    double value = 0.0;
    for (std::size_t i = 0; i < p; ++i) {
        value = std::max(value, rho_point_distance(family, a, b, J).value);
        if (i + 1 < p) {
            a = system.step(a);
            b = system.step(b);
        }
    }
    return {value, J, measure_tail_bound(J)};
}

// --- observables -----------------------------------------------------------------

Observable Observable::first_symbol() {
    return Observable("first_symbol",
                      [](const Point& x) { return static_cast<double>(as_symbolic(x).at(0)); });
}

Observable Observable::coordinate(int axis) {
    return Observable(axis == 0 ? "coordinate_x" : "coordinate_y", [axis](const Point& x) {
        if (const auto* v = std::get_if<double>(&x)) return *v;
        const Vec2& p = as_vec2(x);
        return axis == 0 ? p.x : p.y;
    });
}

Observable Observable::test_function(const TestFunctionFamily& family, int j) {
    return Observable("phi_" + std::to_string(j),
                      [family, j](const Point& x) { return family.evaluate(j, x); });
}

Observable Observable::constant(double c) {
    return Observable("constant", [c](const Point&) { return c; });
}

double birkhoff_average(const System& system, const Observable& phi, const Point& x,
                        std::size_t n) {
    require(n >= 1, "invalid-argument", "Birkhoff average needs n >= 1");
    double sum = 0.0;
    Point p = x;
    for (std::size_t i = 0; i < n; ++i) {
        sum += phi(p);
        if (i + 1 < n) p = system.step(p);
    }
    return sum / static_cast<double>(n);
}

// --- checkpoint integrals ----------------------------------------------------------

namespace {

bool exactly_fixed(const Point& a, const Point& b) {
    if (const auto* x = std::get_if<double>(&a)) return *x == std::get<double>(b);
    if (const auto* v = std::get_if<Vec2>(&a)) return *v == std::get<Vec2>(b);
    return false;  // not worth deciding for symbolic streams
}

// Dispatches on the family kind once, outside the orbit loop.
class Accumulator {
public:
    Accumulator(const TestFunctionFamily& family, int J) : kind_(family.kind()), J_(J) {
        if (kind_ == TestFunctionFamily::Kind::Cylinders) {
            for (int j = 1; j <= J; ++j) words_.push_back(&family.cylinder_word(j));
        } else {
            for (int j = 1; j <= J; ++j) hats_.push_back(family.hat(j));
        }
    }

    void add(const Point& p, double* sums) const {
        switch (kind_) {
            case TestFunctionFamily::Kind::Cylinders: {
                const SymbolicPoint& s = as_symbolic(p);
                for (int j = 0; j < J_; ++j) {
                    const Word& w = *words_[static_cast<std::size_t>(j)];
                    double v = 1.0;
                    for (std::size_t i = 0; i < w.size(); ++i)
                        if (s.at(i) != w[i]) {
                            v = 0.0;
                            break;
                        }
                    sums[j] += v;
                }
                break;
            }
            case TestFunctionFamily::Kind::IntervalHats: {
                const double x = as_interval(p);
                for (int j = 0; j < J_; ++j) {
                    const auto& h = hats_[static_cast<std::size_t>(j)];
                    sums[j] += hat1d(x, h.cx, h.scale);
                }
                break;
            }
            case TestFunctionFamily::Kind::GridHats: {
                const Vec2& v = as_vec2(p);
                for (int j = 0; j < J_; ++j) {
                    const auto& h = hats_[static_cast<std::size_t>(j)];
                    sums[j] += hat1d(v.x, h.cx, h.scale) * hat1d(v.y, h.cy, h.scale);
                }
                break;
            }
        }
    }

private:
    TestFunctionFamily::Kind kind_;
    int J_;
    std::vector<const Word*> words_;
    std::vector<TestFunctionFamily::Hat> hats_;
};

} // namespace

std::vector<CheckpointIntegrals> orbit_checkpoint_integrals(const System& system,
                                                            const TestFunctionFamily& family,
                                                            const Point& x,
                                                            std::span<const long long> checkpoints,
                                                            int J) {
    require(!checkpoints.empty(), "invalid-argument", "no checkpoints given");
    require(J >= 1 && J <= family.max_index(), "invalid-argument", "bad truncation");
    for (std::size_t i = 0; i + 1 < checkpoints.size(); ++i)
        require(checkpoints[i] < checkpoints[i + 1], "invalid-argument",
                "checkpoints must be strictly increasing");
    require(checkpoints.front() >= 1, "invalid-argument", "checkpoints must be >= 1");

    std::vector<double> sums(static_cast<std::size_t>(J), 0.0);
    std::vector<CheckpointIntegrals> out;
    out.reserve(checkpoints.size());

    const Accumulator acc(family, J);
    const long long last = checkpoints.back();
    std::size_t next_cp = 0;
    Point p = x;
    for (long long i = 0; i < last; ++i) {
        acc.add(p, sums.data());
        while (next_cp < checkpoints.size() && checkpoints[next_cp] == i + 1) {
            CheckpointIntegrals cp{checkpoints[next_cp], sums};
            for (double& v : cp.integrals) v /= static_cast<double>(cp.n);
            out.push_back(std::move(cp));
            ++next_cp;
        }
        if (i + 1 < last) {
            Point q = system.step(p);
            if (exactly_fixed(p, q)) {
                // The tail of the orbit is constant; finish arithmetically.
                std::vector<double> at_fixed(static_cast<std::size_t>(J));
                for (int j = 1; j <= J; ++j)
                    at_fixed[static_cast<std::size_t>(j - 1)] = family.evaluate(j, p);
                for (; next_cp < checkpoints.size(); ++next_cp) {
                    const long long n = checkpoints[next_cp];
                    CheckpointIntegrals cp{n, std::vector<double>(static_cast<std::size_t>(J))};
                    for (int j = 0; j < J; ++j)
                        cp.integrals[static_cast<std::size_t>(j)] =
                            (sums[static_cast<std::size_t>(j)] +
                             static_cast<double>(n - i - 1) * at_fixed[static_cast<std::size_t>(j)]) /
                            static_cast<double>(n);
                    out.push_back(std::move(cp));
                }
                return out;
            }
            p = std::move(q);
        }
    }
    return out;
}

MeasureDistance rho_between(const CheckpointIntegrals& a, const CheckpointIntegrals& b) {
    require(a.integrals.size() == b.integrals.size(), "shape-error",
            "checkpoint integral vectors disagree in truncation");
    double value = 0.0;
    for (std::size_t j = 0; j < a.integrals.size(); ++j)
        value += std::fabs(a.integrals[j] - b.integrals[j]) / std::ldexp(1.0, static_cast<int>(j) + 1);
    const int J = static_cast<int>(a.integrals.size());
    return {value, J, measure_tail_bound(J)};
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::QuasiRegularCandidate: return "quasi-regular-candidate";
        case Verdict::IrregularCandidate: return "irregular-candidate";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

ClassifyResult classify_point(const System& system, const Point& x,
                              std::span<const long long> checkpoints, int J,
                              double merge_radius) {
    require(checkpoints.size() >= 4, "insufficient-evidence",
            "need at least 4 checkpoints, got " + std::to_string(checkpoints.size()));
    const TestFunctionFamily family = TestFunctionFamily::for_system(system, std::max(J, 1));

    ClassifyResult result;
    result.merge_radius = merge_radius;
    result.truncation = J;
    result.checkpoints = orbit_checkpoint_integrals(system, family, x, checkpoints, J);

    const std::size_t count = result.checkpoints.size();
    const std::size_t first = count / 2;  // examine the last half only
    const double tail = measure_tail_bound(J);

    double max_value = 0.0;
    std::size_t wa = first, wb = first;
    for (std::size_t a = first; a < count; ++a) {
        for (std::size_t b = a + 1; b < count; ++b) {
            const double v = rho_between(result.checkpoints[a], result.checkpoints[b]).value;
            if (v > max_value) {
                max_value = v;
                wa = a;
                wb = b;
            }
        }
    }
    result.witness = {wa, wb, max_value, tail};

    if (max_value + tail < merge_radius) {
        result.verdict = Verdict::QuasiRegularCandidate;
    } else if (max_value > 2.0 * merge_radius + 2.0 * tail) {
        result.verdict = Verdict::IrregularCandidate;
    } else {
        result.verdict = Verdict::Inconclusive;
    }

    for (std::size_t a = first; a < count; ++a) {
        bool is_new = true;
        for (std::size_t rep : result.cluster_representatives) {
            if (rho_between(result.checkpoints[a], result.checkpoints[rep]).value <= merge_radius) {
                is_new = false;
                break;
            }
        }
        if (is_new) result.cluster_representatives.push_back(a);
    }
    return result;
}

double srb_basin_estimate(const System& grid_system, const EmpiricalMeasure& mu, double eps,
                          int samples, long long n, std::uint64_t seed) {
    require(grid_system.kind() == SystemKind::GridMap, "invalid-argument",
            "basin estimation runs on grid-map systems");
    require(samples >= 100, "precondition-violation", "need at least 100 samples");
    require(n >= 4, "invalid-argument", "orbit length too short");
    const int J = 20;
    const TestFunctionFamily family = TestFunctionFamily::for_system(grid_system, J);

    const std::vector<long long> checkpoints{n / 4, n / 2, (3 * n) / 4, n};
    Rng rng(seed);
    int hits = 0;
    for (int s = 0; s < samples; ++s) {
        const Point x = Vec2{rng.next_unit(), rng.next_unit()};
        const auto cps = orbit_checkpoint_integrals(grid_system, family, x, checkpoints, J);
        bool inside = true;
        for (const auto& cp : cps) {
            double value = 0.0;
            for (int j = 1; j <= J; ++j)
                value += std::fabs(cp.integrals[static_cast<std::size_t>(j - 1)] -
                                   mu.integrate(family, j)) /
                         std::ldexp(1.0, j);
            if (!(value + measure_tail_bound(J) < eps)) {
                inside = false;
                break;
            }
        }
        if (inside) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(samples);
}

} // namespace shadowlab
