#pragma once

// Test-only reference implementations, deliberately independent of the
// production solver: a memoization-free horizon-bounded minimax for the
// damage game, and a brute-force enumerator of labeled connected graphs.

#include <functional>
#include <vector>

#include "damage/game.hpp"
#include "damage/graph.hpp"

namespace oracle {

inline int value(const damage::Graph& g, const damage::GameState& s, std::vector<damage::GameState>& path, int plies_left, int alpha,
                 int beta) {
    using damage::Turn;
    if (plies_left == 0) return 0;
    if (s.damaged == g.all_vertices()) return 0;
    for (const auto& seen : path)
        if (seen == s) return 0;  // repetition gains nothing under least-fixed-point play
    path.push_back(s);
    // Plain alpha-beta over the remaining damage count; no transposition
    // table, so every line is recomputed from scratch.
    int best = s.to_move == Turn::Robber ? 0 : std::numeric_limits<int>::max();
    const int mover = s.to_move == Turn::Cop ? s.cop : s.robber;
    for (damage::Mask tm = g.closed(mover); tm;) {
        const int target = std::countr_zero(tm);
        tm &= tm - 1;
        const damage::StepOutcome out = damage::step(g, s, target);
        const int gain = out.newly_damaged >= 0 ? 1 : 0;
        const int v = gain + (out.terminal ? 0 : value(g, out.next, path, plies_left - 1, alpha - gain, beta - gain));
        if (s.to_move == Turn::Robber) {
            best = std::max(best, v);
            alpha = std::max(alpha, best);
        } else {
            best = std::min(best, v);
            beta = std::min(beta, best);
        }
        if (alpha >= beta) break;
    }
    path.pop_back();
    return best;
}

inline int value(const damage::Graph& g, const damage::GameState& s) {
    std::vector<damage::GameState> path;
    const int horizon = 2 * g.size() * (1 << g.size());
    return value(g, s, path, horizon, 0, std::numeric_limits<int>::max());
}

inline int damage_number(const damage::Graph& g) {
    int best = std::numeric_limits<int>::max();
    for (int c = 0; c < g.size(); ++c) {
        int worst = 0;
        for (int r = 0; r < g.size(); ++r) {
            if (r == c) continue;
            worst = std::max(worst, value(g, damage::GameState{0, static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(r), damage::Turn::Cop}));
        }
        best = std::min(best, worst);
    }
    return best;
}

// Calls `fn` on every labeled connected simple graph with exactly n vertices.
inline void for_each_labeled_connected(int n, const std::function<void(const damage::Graph&)>& fn) {
    std::vector<std::pair<int, int>> slots;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) slots.emplace_back(u, v);
    const std::uint64_t combos = std::uint64_t{1} << slots.size();
    for (std::uint64_t bits = 0; bits < combos; ++bits) {
        damage::Graph g(n);
        for (std::size_t i = 0; i < slots.size(); ++i)
            if (bits >> i & 1) g.add_edge(slots[i].first, slots[i].second);
        if (g.is_connected()) fn(g);
    }
}

}  // namespace oracle
