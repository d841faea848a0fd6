#ifndef SHADOWLAB_SFT_HPP
#define SHADOWLAB_SFT_HPP

#include <cstdint>
#include <vector>

#include "shadowlab/symbolic.hpp"

namespace shadowlab {

struct SftSpec {
    int alphabet = 2;
    std::vector<Word> forbidden;
};

// Vertex shift derived from an SFT spec.  Forbidden words longer than two are
// handled by recoding to blocks of length window-1: a state is an admissible
// (window-1)-word and an edge is an admissible window-word.  States that can
// never be extended to the right are pruned, so every surviving state starts
// an infinite admissible ray.
class TransitionGraph {
public:
    TransitionGraph() = default;
    explicit TransitionGraph(const SftSpec& spec);

    int alphabet() const { return alphabet_; }
    std::size_t window() const { return window_; }
    std::size_t state_count() const { return states_.size(); }
    const Word& state_word(std::size_t s) const { return states_[s]; }

    bool word_admissible(const Word& w) const;

    // Admissibility of every window of the stream up to `length` symbols.
    // Periodic points are checked across the period wrap, which decides the
    // infinite statement.
    bool point_admissible(const SymbolicPoint& x, std::size_t length) const;

    // State reached after reading w (its trailing window-1 symbols), or -1.
    long long state_of(const Word& w) const;

    const std::vector<std::vector<std::size_t>>& out_edges(std::size_t s) const {
        return edges_[s];
    }

    bool has_state(const Word& block) const { return lookup(block) >= 0; }

    // Shortest symbol string c such that from·c·to traverses admissible
    // windows (may be empty).  nullopt when `to` is unreachable.
    std::optional<Word> shortest_bridge(std::size_t from_state, std::size_t to_state) const;

    // All admissible words of the given length (lexicographic order).
    std::vector<Word> enumerate_words(std::size_t length, std::size_t limit) const;

    bool window_admissible(const Word& w) const;  // |w| == window

private:
    long long lookup(const Word& block) const;
    void build(const SftSpec& spec);

    int alphabet_ = 2;
    std::size_t window_ = 2;
    std::vector<Word> states_;                             // admissible (window-1)-words
    std::vector<std::vector<std::vector<std::size_t>>> edges_;  // state -> symbol -> next states (0/1)
    std::vector<std::vector<long long>> next_;             // state x symbol -> state or -1
    std::vector<bool> forbidden_window_;                   // indexed by packed window word
};

} // namespace shadowlab

#endif
