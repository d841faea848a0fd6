#ifndef SHADOWLAB_SYMBOLIC_HPP
#define SHADOWLAB_SYMBOLIC_HPP

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace shadowlab {

using Symbol = std::uint8_t;
using Word = std::vector<Symbol>;

inline constexpr std::size_t kInfiniteHorizon = std::numeric_limits<std::size_t>::max();

// One-sided sequence over a finite alphabet.  The stream is a shared prefix
// buffer viewed from `offset`, followed by an optional repeating period.  With
// an empty period the point is only defined up to a finite horizon and any
// access past it fails loudly.  Shifting is O(1) and shares the buffer, so an
// orbit segment of a long stream costs nothing per point.
class SymbolicPoint {
public:
    SymbolicPoint() = default;

    static SymbolicPoint finite(Word prefix);
    static SymbolicPoint periodic(Word preperiod, Word period);
    static SymbolicPoint fixed(Symbol s) { return periodic({}, {s}); }

    // View into a shared stream starting at `offset`.
    SymbolicPoint(std::shared_ptr<const Word> buffer, std::size_t offset, Word period);

    Symbol at(std::size_t i) const;

    // Number of defined symbols from the current position; kInfiniteHorizon
    // when a period is present.
    std::size_t horizon() const;

    // Symbols before the periodic tail kicks in (0 when already inside it).
    std::size_t preperiod_length() const { return buffer_remaining(); }

    bool eventually_periodic() const { return !period_.empty(); }
    const Word& period() const { return period_; }

    SymbolicPoint shifted(std::size_t k) const;

    Word prefix(std::size_t n) const;

    // "preperiod|period" for periodic points, "prefix" for finite ones.
    std::string to_string() const;
    static SymbolicPoint parse(const std::string& text);

    // Index of the first position where the streams differ.  nullopt means
    // provably equal.  `undecided` is set when both scans ran out of defined
    // symbols (or past scan_limit) without finding a disagreement; the value
    // then holds the number of symbols known to agree.
    struct Compare {
        std::optional<std::size_t> disagreement;
        std::optional<std::size_t> undecided;
    };
    static Compare compare(const SymbolicPoint& a, const SymbolicPoint& b,
                           std::size_t scan_limit = kDefaultScanLimit);

    static bool equal(const SymbolicPoint& a, const SymbolicPoint& b);

    // 64-bit digest of min(n, horizon) leading symbols; used to bucket atoms.
    std::uint64_t prefix_digest(std::size_t n = 64) const;

    static constexpr std::size_t kDefaultScanLimit = 1u << 21;

private:
    std::size_t buffer_remaining() const {
        return buffer_ && offset_ < buffer_->size() ? buffer_->size() - offset_ : 0;
    }

    std::shared_ptr<const Word> buffer_;
    std::size_t offset_ = 0;
    Word period_;
};

// Exact shift metric: 2^(-first disagreement), 0 for equal points.
struct DistanceBound {
    double lower = 0.0;
    double upper = 0.0;
    bool exact() const { return lower == upper; }
};

DistanceBound symbolic_distance_bound(const SymbolicPoint& a, const SymbolicPoint& b,
                                      std::size_t scan_limit = SymbolicPoint::kDefaultScanLimit);

// Exact distance; fails with horizon-exhausted when the scan is undecided.
double symbolic_distance(const SymbolicPoint& a, const SymbolicPoint& b);

std::string word_to_string(const Word& w);
Word word_from_string(const std::string& text);

} // namespace shadowlab

#endif
