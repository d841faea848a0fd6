#include "shadowlab/system.hpp"

#include <cmath>

#include "shadowlab/error.hpp"

namespace shadowlab {

namespace {

double wrap_unit(double v) {
    v = std::fmod(v, 1.0);
    return v < 0.0 ? v + 1.0 : v;
}

double torus_axis(double a, double b) {
    double d = std::fabs(a - b);
    return std::min(d, 1.0 - d);
}

} // namespace

const SymbolicPoint& as_symbolic(const Point& p) {
    const auto* s = std::get_if<SymbolicPoint>(&p);
    require(s != nullptr, "invalid-point", "expected a symbolic point");
    return *s;
}

double as_interval(const Point& p) {
    const auto* v = std::get_if<double>(&p);
    require(v != nullptr, "invalid-point", "expected an interval point");
    return *v;
}

const Vec2& as_vec2(const Point& p) {
    const auto* v = std::get_if<Vec2>(&p);
    require(v != nullptr, "invalid-point", "expected a planar point");
    return *v;
}

std::string point_to_string(const Point& p) {
    if (const auto* s = std::get_if<SymbolicPoint>(&p)) return s->to_string();
    if (const auto* x = std::get_if<double>(&p)) return std::to_string(*x);
    const Vec2& v = std::get<Vec2>(p);
    return "(" + std::to_string(v.x) + "," + std::to_string(v.y) + ")";
}

// --- shift systems ---------------------------------------------------------

Point ShiftSystem::step(const Point& x) const { return as_symbolic(x).shifted(1); }

double ShiftSystem::distance(const Point& a, const Point& b) const {
    return symbolic_distance(as_symbolic(a), as_symbolic(b));
}

DistanceBound ShiftSystem::distance_bound(const Point& a, const Point& b) const {
    return symbolic_distance_bound(as_symbolic(a), as_symbolic(b));
}

FullShift::FullShift(int alphabet) : ShiftSystem(alphabet) {
    require(alphabet >= 2, "invalid-alphabet",
            "alphabet size must be >= 2, got " + std::to_string(alphabet));
}

bool FullShift::contains(const Point& x) const {
    const auto* s = std::get_if<SymbolicPoint>(&x);
    if (s == nullptr) return false;
    const std::size_t check = std::min<std::size_t>(s->horizon(), 1u << 16);
    for (std::size_t i = 0; i < check; ++i)
        if (s->at(i) >= alphabet_size()) return false;
    if (s->eventually_periodic())
        for (Symbol sym : s->period())
            if (sym >= alphabet_size()) return false;
    return true;
}

std::string FullShift::name() const {
    return "full_shift(" + std::to_string(alphabet_size()) + ")";
}

bool FullShift::word_admissible(const Word& w) const {
    for (Symbol s : w)
        if (s >= alphabet_size()) return false;
    return true;
}

std::vector<Word> FullShift::words(std::size_t length, std::size_t limit) const {
    double total = 1.0;
    for (std::size_t i = 0; i < length; ++i) total *= alphabet_size();
    require(total <= static_cast<double>(limit), "pool-too-large",
            "full shift has too many words of length " + std::to_string(length));
    std::vector<Word> out;
    out.reserve(static_cast<std::size_t>(total));
    Word w(length, 0);
    while (true) {
        out.push_back(w);
        std::size_t i = length;
        while (i > 0) {
            if (++w[i - 1] < alphabet_size()) break;
            w[i - 1] = 0;
            --i;
        }
        if (i == 0) break;
    }
    return out;
}

Sft::Sft(SftSpec spec) : ShiftSystem(spec.alphabet), spec_(std::move(spec)), graph_(spec_) {}

bool Sft::contains(const Point& x) const {
    const auto* s = std::get_if<SymbolicPoint>(&x);
    if (s == nullptr) return false;
    std::size_t check;
    if (s->eventually_periodic()) {
        // Windows past preperiod + period repeat; this decides the infinite point.
        check = s->preperiod_length() + 2 * s->period().size() + graph_.window();
    } else {
        check = s->horizon();
    }
    return graph_.point_admissible(*s, std::min<std::size_t>(check, 1u << 20));
}

std::string Sft::name() const {
    std::string n = "sft(" + std::to_string(alphabet_size());
    for (const Word& f : spec_.forbidden) n += ",!" + word_to_string(f);
    return n + ")";
}

bool Sft::word_admissible(const Word& w) const { return graph_.word_admissible(w); }

std::vector<Word> Sft::words(std::size_t length, std::size_t limit) const {
    return graph_.enumerate_words(length, limit);
}

// --- interval homeomorphism -------------------------------------------------

IntervalHomeo::IntervalHomeo(double exponent) : exponent_(exponent) {
    require(std::isfinite(exponent) && exponent > 0.0, "invalid-homeo",
            "exponent must be positive and finite");
    require(exponent != 1.0, "invalid-homeo",
            "identity map has every point fixed; need exactly {0,1} fixed");
}

double IntervalHomeo::apply(double x) const {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    return std::pow(x, exponent_);
}

Point IntervalHomeo::step(const Point& x) const { return apply(as_interval(x)); }

double IntervalHomeo::distance(const Point& a, const Point& b) const {
    return std::fabs(as_interval(a) - as_interval(b));
}

bool IntervalHomeo::contains(const Point& x) const {
    const auto* v = std::get_if<double>(&x);
    return v != nullptr && *v >= 0.0 && *v <= 1.0;
}

std::string IntervalHomeo::name() const {
    if (exponent_ == 0.5) return "interval_homeo(sqrt)";
    if (exponent_ == 2.0) return "interval_homeo(square)";
    return "interval_homeo(pow " + std::to_string(exponent_) + ")";
}

// --- grid map on the torus ---------------------------------------------------

double GridMapSpec::lipschitz() const {
    switch (map) {
        case Kind::Identity:
        case Kind::Translation: return 1.0;
        case Kind::Constant: return 0.0;
        case Kind::Contraction: return rate;
        case Kind::LinearStretch: return static_cast<double>(stretch);
        case Kind::Affine: {
            const double r1 = std::fabs(a11) + std::fabs(a12);
            const double r2 = std::fabs(a21) + std::fabs(a22);
            return std::max(r1, r2) * std::sqrt(2.0);
        }
    }
    return 1.0;
}

GridMap::GridMap(GridMapSpec spec) : spec_(spec) {
    require(spec_.g >= 2, "invalid-grid", "grid resolution must be >= 2");
    if (spec_.map == GridMapSpec::Kind::Contraction)
        require(spec_.rate >= 0.0 && spec_.rate < 1.0, "invalid-grid",
                "contraction rate must lie in [0,1)");
    if (spec_.map == GridMapSpec::Kind::LinearStretch)
        require(spec_.stretch >= 1, "invalid-grid", "stretch factor must be >= 1");
}

Vec2 GridMap::apply(Vec2 p) const {
    switch (spec_.map) {
        case GridMapSpec::Kind::Identity: return p;
        case GridMapSpec::Kind::Translation:
            return {wrap_unit(p.x + spec_.dx), wrap_unit(p.y + spec_.dy)};
        case GridMapSpec::Kind::Constant: return {spec_.cx, spec_.cy};
        case GridMapSpec::Kind::Contraction:
            return {spec_.cx + spec_.rate * (p.x - spec_.cx),
                    spec_.cy + spec_.rate * (p.y - spec_.cy)};
        case GridMapSpec::Kind::LinearStretch:
            return {wrap_unit(p.x * spec_.stretch), p.y};
        case GridMapSpec::Kind::Affine:
            return {wrap_unit(spec_.a11 * p.x + spec_.a12 * p.y + spec_.b1),
                    wrap_unit(spec_.a21 * p.x + spec_.a22 * p.y + spec_.b2)};
    }
    return p;
}

Point GridMap::step(const Point& x) const { return apply(as_vec2(x)); }

double GridMap::distance(const Point& a, const Point& b) const {
    const Vec2& u = as_vec2(a);
    const Vec2& v = as_vec2(b);
    const double dx = torus_axis(u.x, v.x);
    const double dy = torus_axis(u.y, v.y);
    return std::sqrt(dx * dx + dy * dy);
}

bool GridMap::contains(const Point& x) const {
    const auto* v = std::get_if<Vec2>(&x);
    return v != nullptr && v->x >= 0.0 && v->x <= 1.0 && v->y >= 0.0 && v->y <= 1.0;
}

double GridMap::diameter() const { return std::sqrt(0.5); }

std::string GridMap::name() const {
    return "grid_map(g=" + std::to_string(spec_.g) + ")";
}

// --- factories / helpers ------------------------------------------------------

SystemPtr make_full_shift(int alphabet) { return std::make_shared<FullShift>(alphabet); }

SystemPtr make_sft(const SftSpec& spec) { return std::make_shared<Sft>(spec); }

SystemPtr make_interval_homeo(const std::string& formula) {
    if (formula == "sqrt") return std::make_shared<IntervalHomeo>(0.5);
    if (formula == "square") return std::make_shared<IntervalHomeo>(2.0);
    fail("invalid-homeo", "unknown interval formula '" + formula + "' (use sqrt|square)");
}

SystemPtr make_interval_homeo(double exponent) {
    return std::make_shared<IntervalHomeo>(exponent);
}

SystemPtr make_grid_map(const GridMapSpec& spec) { return std::make_shared<GridMap>(spec); }

std::vector<Point> orbit_segment(const System& system, const Point& x, std::size_t n) {
    require(n >= 1, "invalid-argument", "orbit length must be >= 1");
    require(system.contains(x), "invalid-point", "point is not in the phase space");
    std::vector<Point> orbit;
    orbit.reserve(n);
    orbit.push_back(x);
    for (std::size_t i = 1; i < n; ++i) orbit.push_back(system.step(orbit.back()));
    return orbit;
}

} // namespace shadowlab
