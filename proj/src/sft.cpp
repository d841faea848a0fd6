#include "shadowlab/sft.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include "shadowlab/error.hpp"

namespace shadowlab {

namespace {

bool contains_factor(const Word& w, const Word& factor) {
    if (factor.empty() || factor.size() > w.size()) return false;
    return std::search(w.begin(), w.end(), factor.begin(), factor.end()) != w.end();
}

bool clean(const Word& w, const std::vector<Word>& forbidden) {
    for (const Word& f : forbidden)
        if (contains_factor(w, f)) return false;
    return true;
}

} // namespace

TransitionGraph::TransitionGraph(const SftSpec& spec) { build(spec); }

void TransitionGraph::build(const SftSpec& spec) {
    require(spec.alphabet >= 2, "invalid-alphabet",
            "alphabet size must be >= 2, got " + std::to_string(spec.alphabet));
    alphabet_ = spec.alphabet;
    window_ = 2;
    for (const Word& f : spec.forbidden) {
        require(!f.empty(), "invalid-forbidden", "empty forbidden word");
        for (Symbol s : f)
            require(s < alphabet_, "invalid-forbidden", "forbidden word symbol out of alphabet");
        window_ = std::max(window_, f.size());
    }
    double combinations = 1.0;
    for (std::size_t i = 0; i < window_; ++i) combinations *= alphabet_;
    require(combinations <= double(1u << 22), "invalid-forbidden",
            "recoded window too large for explicit state construction");

    // Enumerate admissible (window-1)-words as states.
    std::vector<Word> stack{Word{}};
    std::vector<Word> blocks;
    while (!stack.empty()) {
        Word w = std::move(stack.back());
        stack.pop_back();
        if (w.size() == window_ - 1) {
            blocks.push_back(std::move(w));
            continue;
        }
        for (int s = alphabet_ - 1; s >= 0; --s) {
            Word next = w;
            next.push_back(static_cast<Symbol>(s));
            if (clean(next, spec.forbidden)) stack.push_back(std::move(next));
        }
    }
    std::sort(blocks.begin(), blocks.end());

    std::map<Word, std::size_t> index;
    for (std::size_t i = 0; i < blocks.size(); ++i) index[blocks[i]] = i;

    std::vector<std::vector<long long>> next(blocks.size(),
                                             std::vector<long long>(alphabet_, -1));
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        for (int s = 0; s < alphabet_; ++s) {
            Word window = blocks[i];
            window.push_back(static_cast<Symbol>(s));
            if (!clean(window, spec.forbidden)) continue;
            Word tail(window.begin() + 1, window.end());
            auto it = index.find(tail);
            if (it != index.end()) next[i][s] = static_cast<long long>(it->second);
        }
    }

    // Right-prune states with no outgoing edges so that every surviving state
    // begins an infinite admissible ray.
    std::vector<bool> alive(blocks.size(), true);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t i = 0; i < blocks.size(); ++i) {
            if (!alive[i]) continue;
            bool has_edge = false;
            for (int s = 0; s < alphabet_; ++s)
                if (next[i][s] >= 0 && alive[static_cast<std::size_t>(next[i][s])]) has_edge = true;
            if (!has_edge) {
                alive[i] = false;
                changed = true;
            }
        }
    }

    std::vector<long long> remap(blocks.size(), -1);
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (!alive[i]) continue;
        remap[i] = static_cast<long long>(states_.size());
        states_.push_back(blocks[i]);
    }
    require(!states_.empty(), "empty-system", "the subshift has no infinite admissible points");

    next_.assign(states_.size(), std::vector<long long>(alphabet_, -1));
    for (std::size_t i = 0; i < blocks.size(); ++i) {
        if (remap[i] < 0) continue;
        for (int s = 0; s < alphabet_; ++s) {
            const long long t = next[i][s];
            if (t >= 0 && remap[static_cast<std::size_t>(t)] >= 0)
                next_[static_cast<std::size_t>(remap[i])][s] = remap[static_cast<std::size_t>(t)];
        }
    }
}

long long TransitionGraph::lookup(const Word& block) const {
    const auto it = std::lower_bound(states_.begin(), states_.end(), block);
    if (it == states_.end() || *it != block) return -1;
    return it - states_.begin();
}

long long TransitionGraph::state_of(const Word& w) const {
    if (w.size() < window_ - 1) return -1;
    return lookup(Word(w.end() - static_cast<long long>(window_ - 1), w.end()));
}

bool TransitionGraph::word_admissible(const Word& w) const {
    if (w.size() < window_ - 1) {
        // Short words are in the language iff they extend to a live state.
        for (const Word& st : states_)
            if (std::equal(w.begin(), w.end(), st.begin())) return true;
        return false;
    }
    long long state = lookup(Word(w.begin(), w.begin() + static_cast<long long>(window_ - 1)));
    if (state < 0) return false;
    for (std::size_t i = window_ - 1; i < w.size(); ++i) {
        state = next_[static_cast<std::size_t>(state)][w[i]];
        if (state < 0) return false;
    }
    return true;
}

bool TransitionGraph::point_admissible(const SymbolicPoint& x, std::size_t length) const {
    if (length < window_ - 1) return true;
    return word_admissible(x.prefix(length));
}

std::optional<Word> TransitionGraph::shortest_bridge(std::size_t from_state,
                                                     std::size_t to_state) const {
    std::vector<long long> prev_state(states_.size(), -2);
    std::vector<Symbol> prev_symbol(states_.size(), 0);
    std::deque<std::size_t> queue;
    prev_state[from_state] = -1;
    queue.push_back(from_state);
    if (from_state == to_state) return Word{};
    while (!queue.empty()) {
        const std::size_t u = queue.front();
        queue.pop_front();
        for (int s = 0; s < alphabet_; ++s) {
            const long long v = next_[u][s];
            if (v < 0 || prev_state[static_cast<std::size_t>(v)] != -2) continue;
            prev_state[static_cast<std::size_t>(v)] = static_cast<long long>(u);
            prev_symbol[static_cast<std::size_t>(v)] = static_cast<Symbol>(s);
            if (static_cast<std::size_t>(v) == to_state) {
                Word bridge;
                std::size_t cur = to_state;
                while (prev_state[cur] >= 0) {
                    bridge.push_back(prev_symbol[cur]);
                    cur = static_cast<std::size_t>(prev_state[cur]);
                }
                std::reverse(bridge.begin(), bridge.end());
                return bridge;
            }
            queue.push_back(static_cast<std::size_t>(v));
        }
    }
    return std::nullopt;
}

std::vector<Word> TransitionGraph::enumerate_words(std::size_t length, std::size_t limit) const {
    std::vector<Word> out;
    if (length < window_ - 1) {
        std::set<Word> prefixes;
        for (const Word& st : states_) prefixes.insert(Word(st.begin(), st.begin() + length));
        out.assign(prefixes.begin(), prefixes.end());
        return out;
    }
    struct Frame {
        Word word;
        std::size_t state;
    };
    std::vector<Frame> stack;
    for (std::size_t i = states_.size(); i-- > 0;) stack.push_back({states_[i], i});
    while (!stack.empty()) {
        Frame f = std::move(stack.back());
        stack.pop_back();
        if (f.word.size() == length) {
            out.push_back(std::move(f.word));
            require(out.size() <= limit, "pool-too-large",
                    "word enumeration exceeded limit " + std::to_string(limit));
            continue;
        }
        for (int s = alphabet_ - 1; s >= 0; --s) {
            const long long t = next_[f.state][s];
            if (t < 0) continue;
            Frame g{f.word, static_cast<std::size_t>(t)};
            g.word.push_back(static_cast<Symbol>(s));
            stack.push_back(std::move(g));
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool TransitionGraph::window_admissible(const Word& w) const {
    return word_admissible(w);
}

} // namespace shadowlab
