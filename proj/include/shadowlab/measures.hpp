#ifndef SHADOWLAB_MEASURES_HPP
#define SHADOWLAB_MEASURES_HPP

#include <cmath>
#include <functional>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "shadowlab/error.hpp"
#include "shadowlab/system.hpp"

namespace shadowlab {

// Ordered dense family {phi_j} used by the weak* metric
//   rho(xi, tau) = sum_j |int phi_j dxi - int phi_j dtau| / (2^j ||phi_j||).
// Shift spaces use cylinder indicators enumerated by length then
// lexicographically; interval and planar systems use hat functions at dyadic
// centers enumerated coarse to fine.  Every member has sup norm 1.  Density in
// C(X,R) follows from Stone-Weierstrass for the cylinder algebra and from
// piecewise-linear interpolation for the hats; neither is machine-checked.
class TestFunctionFamily {
public:
    enum class Kind { Cylinders, IntervalHats, GridHats };

    static TestFunctionFamily cylinders(int alphabet, int max_j = 64);
    static TestFunctionFamily interval_hats(int max_j = 64);
    static TestFunctionFamily grid_hats(int max_j = 64);
    static TestFunctionFamily for_system(const System& system, int max_j = 64);

    Kind kind() const { return kind_; }
    int max_index() const { return max_j_; }
    double sup_norm(int j) const;
    double evaluate(int j, const Point& x) const;

    // Cylinder word of phi_j (Cylinders kind only).
    const Word& cylinder_word(int j) const;

    struct Hat {
        double cx = 0.0, cy = 0.0;
        double scale = 1.0;  // slope; support radius is 1/scale per axis
    };
    const Hat& hat(int j) const;

    int alphabet() const { return alphabet_; }

private:
    TestFunctionFamily() = default;

    Kind kind_ = Kind::Cylinders;
    int alphabet_ = 2;
    int max_j_ = 0;
    std::vector<Word> words_;
    std::vector<Hat> hats_;
};

struct MeasureDistance {
    double value = 0.0;  // truncated series; a lower bound on rho
    int truncation = 0;
    double tail = 0.0;  // 2^(1-J); true rho lies in [value, value + tail]
};

inline double measure_tail_bound(int J) { return std::ldexp(1.0, 1 - J); }

// Uniform atomic measure on an orbit prefix.  Weights are multiplicity/n in
// exact integer arithmetic; equal orbit points are merged.
class EmpiricalMeasure {
public:
    struct Atom {
        Point where;
        long long multiplicity = 1;
    };

    static EmpiricalMeasure dirac(Point at);
    static EmpiricalMeasure from_points(const System& system, std::vector<Point> points);

    long long denominator() const { return denominator_; }
    const std::vector<Atom>& atoms() const { return atoms_; }

    double integrate(const TestFunctionFamily& family, int j) const;

private:
    std::vector<Atom> atoms_;
    long long denominator_ = 0;
};

// E_n(x) = (1/n) sum of Dirac masses on the first n orbit points.
EmpiricalMeasure empirical_measure(const System& system, const Point& x, std::size_t n);

// Abstract measures distinguished only through test-function integrals.
class TargetMeasure {
public:
    virtual ~TargetMeasure() = default;
    virtual double integrate(const TestFunctionFamily& family, int j) const = 0;
};

class BernoulliTarget final : public TargetMeasure {
public:
    explicit BernoulliTarget(std::vector<double> probabilities);
    static BernoulliTarget uniform(int alphabet);
    double integrate(const TestFunctionFamily& family, int j) const override;

private:
    std::vector<double> p_;
};

class DiracTarget final : public TargetMeasure {
public:
    explicit DiracTarget(Point at) : at_(std::move(at)) {}
    double integrate(const TestFunctionFamily& family, int j) const override;

private:
    Point at_;
};

class MixtureTarget final : public TargetMeasure {
public:
    MixtureTarget(std::shared_ptr<const TargetMeasure> a, std::shared_ptr<const TargetMeasure> b,
                  double beta)
        : a_(std::move(a)), b_(std::move(b)), beta_(beta) {}
    double integrate(const TestFunctionFamily& family, int j) const override {
        return beta_ * a_->integrate(family, j) + (1.0 - beta_) * b_->integrate(family, j);
    }

private:
    std::shared_ptr<const TargetMeasure> a_, b_;
    double beta_;
};

// Fixed integral vector (e.g. a frozen empirical measure or cyclic word
// frequencies) exposed as a target.
class VectorTarget final : public TargetMeasure {
public:
    explicit VectorTarget(std::vector<double> integrals) : integrals_(std::move(integrals)) {}
    double integrate(const TestFunctionFamily&, int j) const override {
        require(j >= 1 && j <= static_cast<int>(integrals_.size()), "invalid-argument",
                "integral index out of range");
        return integrals_[static_cast<std::size_t>(j - 1)];
    }

private:
    std::vector<double> integrals_;
};

template <class M>
concept Integrable = requires(const M& m, const TestFunctionFamily& f, int j) {
    { m.integrate(f, j) } -> std::convertible_to<double>;
};

template <Integrable A, Integrable B>
MeasureDistance weak_star_distance(const TestFunctionFamily& family, const A& xi, const B& tau,
                                   int J) {
    require(J >= 1, "invalid-argument", "truncation must be >= 1");
    require(J <= family.max_index(), "invalid-argument", "truncation exceeds family size");
    double value = 0.0;
    for (int j = 1; j <= J; ++j)
        value += std::fabs(xi.integrate(family, j) - tau.integrate(family, j)) /
                 (std::ldexp(1.0, j) * family.sup_norm(j));
    return {value, J, measure_tail_bound(J)};
}

// rho(delta_a, delta_b): the renormalized point metric the measure estimates
// are stated in.  Exposed here, deliberately not as the system metric.
MeasureDistance rho_point_distance(const TestFunctionFamily& family, const Point& a,
                                   const Point& b, int J);

// max over i < p of truncated rho(delta_{f^i x}, delta_{f^i y}).
MeasureDistance rho_orbit_distance(const System& system, const TestFunctionFamily& family,
                                   const Point& x, const Point& y, std::size_t p, int J);

// Observables for Birkhoff averages.
class Observable {
public:
    static Observable first_symbol();
    static Observable coordinate(int axis = 0);
    static Observable test_function(const TestFunctionFamily& family, int j);
    static Observable constant(double c);

    double operator()(const Point& x) const { return fn_(x); }
    const std::string& name() const { return name_; }

private:
    Observable(std::string name, std::function<double(const Point&)> fn)
        : name_(std::move(name)), fn_(std::move(fn)) {}
    std::string name_;
    std::function<double(const Point&)> fn_;
};

// (1/n) sum_{i<n} phi(f^i(x)).
double birkhoff_average(const System& system, const Observable& phi, const Point& x,
                        std::size_t n);

struct CheckpointIntegrals {
    long long n = 0;
    std::vector<double> integrals;  // int phi_j dE_n(x), j = 1..J
};

// Single orbit pass with snapshots at the given checkpoints (strictly
// increasing).  Orbits that reach an exactly fixed point are fast-forwarded.
std::vector<CheckpointIntegrals> orbit_checkpoint_integrals(const System& system,
                                                            const TestFunctionFamily& family,
                                                            const Point& x,
                                                            std::span<const long long> checkpoints,
                                                            int J);

MeasureDistance rho_between(const CheckpointIntegrals& a, const CheckpointIntegrals& b);

enum class Verdict { QuasiRegularCandidate, IrregularCandidate, Inconclusive };

std::string verdict_name(Verdict v);

struct ClassifyResult {
    Verdict verdict = Verdict::Inconclusive;
    std::vector<CheckpointIntegrals> checkpoints;
    // Leader clustering of the examined (last-half) checkpoint measures;
    // representatives are pairwise farther apart than the merge radius.
    std::vector<std::size_t> cluster_representatives;
    struct WitnessPair {
        std::size_t a = 0, b = 0;
        double value = 0.0;
        double tail = 0.0;
    };
    WitnessPair witness;  // maximal rho pair among the examined measures
    double merge_radius = 0.0;
    int truncation = 0;
};

// Divergence verdict from checkpoint empirical measures.  Only the last half
// of the checkpoints enters the verdict, damping transients.  Comparisons are
// widened by the series tail so that "irregular-candidate" certifies a true
// rho gap and "quasi-regular-candidate" certifies true closeness.
ClassifyResult classify_point(const System& system, const Point& x,
                              std::span<const long long> checkpoints, int J,
                              double merge_radius);

// Fraction of uniformly sampled points whose checkpoint measures all stay
// rho-within eps of mu.  Deterministic under the seed.
double srb_basin_estimate(const System& grid_system, const EmpiricalMeasure& mu, double eps,
                          int samples, long long n, std::uint64_t seed);

} // namespace shadowlab

#endif
