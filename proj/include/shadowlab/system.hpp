#ifndef SHADOWLAB_SYSTEM_HPP
#define SHADOWLAB_SYSTEM_HPP

#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "shadowlab/sft.hpp"
#include "shadowlab/symbolic.hpp"

namespace shadowlab {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
    friend bool operator==(const Vec2& a, const Vec2& b) { return a.x == b.x && a.y == b.y; }
};

using Point = std::variant<SymbolicPoint, double, Vec2>;

enum class SystemKind { FullShift, Sft, IntervalHomeo, GridMap };

// Compact metric space plus a continuous self-map.  Systems are immutable
// after construction; every operation is read-only.
class System {
public:
    virtual ~System() = default;

    virtual SystemKind kind() const = 0;
    virtual Point step(const Point& x) const = 0;
    virtual double distance(const Point& a, const Point& b) const = 0;
    virtual bool contains(const Point& x) const = 0;
    virtual double diameter() const = 0;
    virtual std::string name() const = 0;

    // Exact value when decidable, interval otherwise (finite-horizon symbolic
    // points that agree on their whole common prefix).
    virtual DistanceBound distance_bound(const Point& a, const Point& b) const {
        const double d = distance(a, b);
        return {d, d};
    }

    Point iterate(Point x, std::size_t n) const {
        for (std::size_t i = 0; i < n; ++i) x = step(x);
        return x;
    }
};

class ShiftSystem : public System {
public:
    explicit ShiftSystem(int alphabet) : alphabet_(alphabet) {}

    int alphabet_size() const { return alphabet_; }

    Point step(const Point& x) const override;
    double distance(const Point& a, const Point& b) const override;
    DistanceBound distance_bound(const Point& a, const Point& b) const override;
    double diameter() const override { return 1.0; }

    virtual bool word_admissible(const Word& w) const = 0;
    // Language of the subshift: admissible words that occur in some point.
    virtual std::vector<Word> words(std::size_t length, std::size_t limit = 1u << 22) const = 0;
    virtual const TransitionGraph* graph() const { return nullptr; }

private:
    int alphabet_;
};

class FullShift final : public ShiftSystem {
public:
    explicit FullShift(int alphabet);
    SystemKind kind() const override { return SystemKind::FullShift; }
    bool contains(const Point& x) const override;
    std::string name() const override;
    bool word_admissible(const Word& w) const override;
    std::vector<Word> words(std::size_t length, std::size_t limit) const override;
};

class Sft final : public ShiftSystem {
public:
    explicit Sft(SftSpec spec);
    SystemKind kind() const override { return SystemKind::Sft; }
    bool contains(const Point& x) const override;
    std::string name() const override;
    bool word_admissible(const Word& w) const override;
    std::vector<Word> words(std::size_t length, std::size_t limit) const override;
    const TransitionGraph* graph() const override { return &graph_; }
    const SftSpec& spec() const { return spec_; }

private:
    SftSpec spec_;
    TransitionGraph graph_;
};

// Strictly increasing homeomorphism x -> x^exponent of [0,1]; 0 and 1 are its
// only fixed points.
class IntervalHomeo final : public System {
public:
    explicit IntervalHomeo(double exponent);

    SystemKind kind() const override { return SystemKind::IntervalHomeo; }
    Point step(const Point& x) const override;
    double distance(const Point& a, const Point& b) const override;
    bool contains(const Point& x) const override;
    double diameter() const override { return 1.0; }
    std::string name() const override;

    double exponent() const { return exponent_; }
    double apply(double x) const;

private:
    double exponent_;
};

struct GridMapSpec {
    enum class Kind { Identity, Translation, Constant, Contraction, LinearStretch, Affine };
    Kind map = Kind::Identity;
    int g = 16;  // grid resolution used as the Lebesgue proxy
    double dx = 0.0, dy = 0.0;                      // translation
    double cx = 0.5, cy = 0.5, rate = 0.5;          // constant / contraction
    int stretch = 2;                                // linear stretch factor
    double a11 = 1, a12 = 0, a21 = 0, a22 = 1, b1 = 0, b2 = 0;  // affine mod 1

    // Conservative Lipschitz constant of the family member; perturbation
    // certificates take an explicit budget but default to this.
    double lipschitz() const;
};

// Continuous self-map of the unit square glued as a torus.
class GridMap final : public System {
public:
    explicit GridMap(GridMapSpec spec);

    SystemKind kind() const override { return SystemKind::GridMap; }
    Point step(const Point& x) const override;
    double distance(const Point& a, const Point& b) const override;
    bool contains(const Point& x) const override;
    double diameter() const override;
    std::string name() const override;

    Vec2 apply(Vec2 p) const;
    const GridMapSpec& spec() const { return spec_; }

private:
    GridMapSpec spec_;
};

using SystemPtr = std::shared_ptr<const System>;

SystemPtr make_full_shift(int alphabet);
SystemPtr make_sft(const SftSpec& spec);
SystemPtr make_interval_homeo(const std::string& formula);
SystemPtr make_interval_homeo(double exponent);
SystemPtr make_grid_map(const GridMapSpec& spec);

// (x, f(x), ..., f^(n-1)(x)); length exactly n.
std::vector<Point> orbit_segment(const System& system, const Point& x, std::size_t n);

const SymbolicPoint& as_symbolic(const Point& p);
double as_interval(const Point& p);
const Vec2& as_vec2(const Point& p);

std::string point_to_string(const Point& p);

} // namespace shadowlab

#endif
