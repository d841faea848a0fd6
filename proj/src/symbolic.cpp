#include "shadowlab/symbolic.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "shadowlab/error.hpp"

namespace shadowlab {

SymbolicPoint SymbolicPoint::finite(Word prefix) {
    SymbolicPoint p;
    p.buffer_ = std::make_shared<const Word>(std::move(prefix));
    return p;
}

SymbolicPoint SymbolicPoint::periodic(Word preperiod, Word period) {
    require(!period.empty(), "invalid-point", "periodic point needs a nonempty period");
    SymbolicPoint p;
    p.buffer_ = std::make_shared<const Word>(std::move(preperiod));
    p.period_ = std::move(period);
    return p;
}

SymbolicPoint::SymbolicPoint(std::shared_ptr<const Word> buffer, std::size_t offset, Word period)
    : buffer_(std::move(buffer)), offset_(offset), period_(std::move(period)) {}

Symbol SymbolicPoint::at(std::size_t i) const {
    const std::size_t pos = offset_ + i;
    if (buffer_ && pos < buffer_->size()) return (*buffer_)[pos];
    if (!period_.empty()) {
        const std::size_t base = buffer_ ? buffer_->size() : 0;
        return period_[(pos - base) % period_.size()];
    }
    fail("horizon-exhausted",
         "symbol " + std::to_string(i) + " requested, horizon is " + std::to_string(horizon()));
}

std::size_t SymbolicPoint::horizon() const {
    if (!period_.empty()) return kInfiniteHorizon;
    return buffer_remaining();
}

SymbolicPoint SymbolicPoint::shifted(std::size_t k) const {
    SymbolicPoint p = *this;
    p.offset_ += k;
    if (p.period_.empty() && p.buffer_ && p.offset_ > p.buffer_->size())
        fail("horizon-exhausted", "shift past the end of a finite-horizon point");
    return p;
}

Word SymbolicPoint::prefix(std::size_t n) const {
    Word w(n);
    for (std::size_t i = 0; i < n; ++i) w[i] = at(i);
    return w;
}

std::string SymbolicPoint::to_string() const {
    std::string out;
    const std::size_t pre = buffer_remaining();
    out.reserve(pre + period_.size() + 1);
    for (std::size_t i = 0; i < pre; ++i) out += static_cast<char>('0' + (*buffer_)[offset_ + i]);
    if (!period_.empty()) {
        // Offsets inside the period rotate it.
        out += '|';
        const std::size_t base = buffer_ ? buffer_->size() : 0;
        const std::size_t rot = offset_ > base ? (offset_ - base) % period_.size() : 0;
        for (std::size_t i = 0; i < period_.size(); ++i)
            out += static_cast<char>('0' + period_[(rot + i) % period_.size()]);
    }
    return out;
}

SymbolicPoint SymbolicPoint::parse(const std::string& text) {
    const auto bar = text.find('|');
    auto digits = [](const std::string& s) {
        Word w;
        w.reserve(s.size());
        for (char c : s) {
            require(c >= '0' && c <= '9', "invalid-point", "bad symbol character in point literal");
            w.push_back(static_cast<Symbol>(c - '0'));
        }
        return w;
    };
    if (bar == std::string::npos) return finite(digits(text));
    return periodic(digits(text.substr(0, bar)), digits(text.substr(bar + 1)));
}

SymbolicPoint::Compare SymbolicPoint::compare(const SymbolicPoint& a, const SymbolicPoint& b,
                                              std::size_t scan_limit) {
    // Two eventually periodic streams agree everywhere iff they agree up to
    // the joint preperiod plus one lcm of the periods.
    std::size_t decide_at = scan_limit;
    if (a.eventually_periodic() && b.eventually_periodic()) {
        const std::size_t pre = std::max(a.buffer_remaining(), b.buffer_remaining());
        const std::size_t la = a.period_.size(), lb = b.period_.size();
        const std::size_t l = std::lcm(la, lb);
        if (l < scan_limit && pre < scan_limit - l) decide_at = pre + l;
    }
    const std::size_t avail = std::min({a.horizon(), b.horizon(), decide_at});
    for (std::size_t i = 0; i < avail; ++i)
        if (a.at(i) != b.at(i)) return {i, std::nullopt};
    if (avail == decide_at && decide_at < scan_limit) return {std::nullopt, std::nullopt};
    return {std::nullopt, avail};
}

bool SymbolicPoint::equal(const SymbolicPoint& a, const SymbolicPoint& b) {
    const Compare c = compare(a, b);
    if (c.disagreement) return false;
    if (!c.undecided) return true;
    fail("horizon-exhausted", "equality undecidable at horizon " + std::to_string(*c.undecided));
}

std::uint64_t SymbolicPoint::prefix_digest(std::size_t n) const {
    const std::size_t len = std::min(n, horizon());
    std::uint64_t h = 0xcbf29ce484222325ULL ^ (period_.empty() ? len : 0);
    for (std::size_t i = 0; i < len; ++i) {
        h ^= at(i);
        h *= 0x100000001b3ULL;
    }
    return h;
}

DistanceBound symbolic_distance_bound(const SymbolicPoint& a, const SymbolicPoint& b,
                                      std::size_t scan_limit) {
    const auto c = SymbolicPoint::compare(a, b, scan_limit);
    if (c.disagreement) {
        const double d = std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(*c.disagreement, 4000)));
        return {d, d};
    }
    if (!c.undecided) return {0.0, 0.0};
    return {0.0, std::ldexp(1.0, -static_cast<int>(std::min<std::size_t>(*c.undecided, 4000)))};
}

double symbolic_distance(const SymbolicPoint& a, const SymbolicPoint& b) {
    const DistanceBound d = symbolic_distance_bound(a, b);
    if (!d.exact())
        fail("horizon-exhausted", "distance undecided: points agree on the full common horizon");
    return d.lower;
}

std::string word_to_string(const Word& w) {
    std::string out;
    out.reserve(w.size());
    for (Symbol s : w) out += static_cast<char>('0' + s);
    return out;
}

Word word_from_string(const std::string& text) {
    Word w;
    w.reserve(text.size());
    for (char c : text) {
        require(c >= '0' && c <= '9', "invalid-point", "bad symbol character in word literal");
        w.push_back(static_cast<Symbol>(c - '0'));
    }
    return w;
}

} // namespace shadowlab
