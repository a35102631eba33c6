#pragma once

// Exact game semantics and solvers for the damage game: one cop, one robber,
// cop moves first each round.  A vertex is damaged when the robber completes
// an action (pass or move) while occupying it.  Values are remaining damage
// the robber can force against optimal cop play, computed as the least fixed
// point of the Bellman operator, layer by layer in decreasing damaged-set
// size.

#include <bit>
#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "damage/graph.hpp"

namespace damage {

struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class Turn : std::uint8_t { Cop = 0, Robber = 1 };

struct GameState {
    Mask damaged = 0;
    std::uint8_t cop = 0;
    std::uint8_t robber = 0;
    Turn to_move = Turn::Cop;

    bool operator==(const GameState&) const = default;
};

struct StepOutcome {
    bool terminal = false;        // capture
    GameState next;               // valid only when !terminal
    int newly_damaged = -1;       // vertex damaged by this action, -1 if none
};

// One action of the side to move.  `target` must lie in the closed
// neighbourhood of the mover (target == current vertex is a pass).
inline StepOutcome step(const Graph& g, const GameState& s, int target) {
    StepOutcome out;
    if (s.to_move == Turn::Cop) {
        if ((g.closed(s.cop) & vbit(target)) == 0)
            throw GraphError("illegal cop action: " + std::to_string(target) + " not in N[" + std::to_string(s.cop) + "]");
        if (target == s.robber) {
            // Capture pre-empts damage of the robber's current vertex.
            out.terminal = true;
            out.next = s;
            return out;
        }
        out.next = GameState{s.damaged, static_cast<std::uint8_t>(target), s.robber, Turn::Robber};
        return out;
    }
    if ((g.closed(s.robber) & vbit(target)) == 0)
        throw GraphError("illegal robber action: " + std::to_string(target) + " not in N[" + std::to_string(s.robber) + "]");
    // The robber damages its current vertex whether it passes or moves.
    Mask damaged = s.damaged;
    if ((damaged & vbit(s.robber)) == 0) {
        damaged |= vbit(s.robber);
        out.newly_damaged = s.robber;
    }
    if (target == s.cop) {
        // Moving onto the cop is legal; damage resolves first, then capture.
        out.terminal = true;
        out.next = GameState{damaged, s.cop, s.robber, Turn::Cop};
        return out;
    }
    out.next = GameState{damaged, s.cop, static_cast<std::uint8_t>(target), Turn::Cop};
    return out;
}

// ---------------------------------------------------------------------------
// Dense value table.
// ---------------------------------------------------------------------------

struct SolveBudget {
    std::uint64_t max_states = 200'000'000;  // one byte per state
};

struct SolveStats {
    std::uint64_t states = 0;
    std::uint64_t sweeps = 0;
    double wall_ms = 0.0;
};

class ValueTable {
public:
    ValueTable() = default;
    ValueTable(int n) : n_(n), values_(std::size_t{1} << n, 0) {
        values_.resize((std::size_t{1} << n) * static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * 2, 0);
    }

    int n() const { return n_; }

    std::uint8_t value(Mask damaged, int cop, int robber, Turn t) const { return values_[index(damaged, cop, robber, t)]; }

    std::uint8_t& slot(Mask damaged, int cop, int robber, Turn t) { return values_[index(damaged, cop, robber, t)]; }

    const SolveStats& stats() const { return stats_; }
    SolveStats& stats() { return stats_; }

private:
    std::size_t index(Mask damaged, int cop, int robber, Turn t) const {
        return ((static_cast<std::size_t>(damaged) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(cop)) * static_cast<std::size_t>(n_) +
                static_cast<std::size_t>(robber)) * 2 + static_cast<std::size_t>(t);
    }

    int n_ = 0;
    std::vector<std::uint8_t> values_;
    SolveStats stats_;
};

// Exact additional-damage values for every state.  Least fixed point of
//   V(D,c,r,Robber) = max_{r' in N[r]} gain(r,D) + (r' == c ? 0 : V(D u {r}, c, r', Cop))
//   V(D,c,r,Cop)    = min_{c' in N[c]} (c' == r ? 0 : V(D, c', r, Robber))
// solved per damaged-set layer; within a layer the game is a non-negative
// total-payoff reachability game solved by iteration from all-zero.
inline ValueTable solve_values(const Graph& g, const SolveBudget& budget = {}) {
    g.require_connected("solve_values");
    const int n = g.size();
    const std::uint64_t states = (std::uint64_t{1} << n) * static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n) * 2;
    if (n >= 40 || states > budget.max_states)
        throw BudgetError("solve_values: " + std::to_string(states) + " states exceed budget of " + std::to_string(budget.max_states));

    const auto t0 = std::chrono::steady_clock::now();
    ValueTable table(n);
    table.stats().states = states;
    const Mask full = g.all_vertices();

    for (int layer = n; layer >= 0; --layer) {
        // Gosper's hack: all subsets of `full` with popcount == layer.
        Mask d = layer == 0 ? 0 : (vbit(layer) - 1);
        while (true) {
            // Robber-to-move states with the robber on an undamaged vertex
            // jump to the next layer, which is already solved.
            for (Mask rm = full & ~d; rm;) {
                const int r = std::countr_zero(rm);
                rm &= rm - 1;
                const Mask d2 = d | vbit(r);
                for (int c = 0; c < n; ++c) {
                    if (c == r) continue;
                    int best = 0;
                    for (Mask tm = g.closed(r); tm;) {
                        const int rr = std::countr_zero(tm);
                        tm &= tm - 1;
                        const int v = 1 + (rr == c ? 0 : table.value(d2, c, rr, Turn::Cop));
                        if (v > best) best = v;
                    }
                    table.slot(d, c, r, Turn::Robber) = static_cast<std::uint8_t>(best);
                }
            }
            // Within-layer fixed point over cop states and robber-on-damaged
            // states (those transitions keep the damaged set unchanged).
            bool changed = true;
            while (changed) {
                changed = false;
                ++table.stats().sweeps;
                for (int c = 0; c < n; ++c) {
                    for (Mask rm2 = d & ~vbit(c); rm2;) {
                        const int r = std::countr_zero(rm2);
                        rm2 &= rm2 - 1;
                        int best = 0;
                        for (Mask tm = g.closed(r); tm;) {
                            const int rr = std::countr_zero(tm);
                            tm &= tm - 1;
                            if (rr == c) continue;  // moving onto the cop: 0 extra
                            const int v = table.value(d, c, rr, Turn::Cop);
                            if (v > best) best = v;
                        }
                        auto& cell = table.slot(d, c, r, Turn::Robber);
                        if (best > cell) {
                            cell = static_cast<std::uint8_t>(best);
                            changed = true;
                        }
                    }
                    for (int r = 0; r < n; ++r) {
                        if (c == r) continue;
                        int best;
                        if (g.adjacent(c, r)) {
                            best = 0;  // cop captures
                        } else {
                            best = std::numeric_limits<int>::max();
                            for (Mask tm = g.closed(c); tm;) {
                                const int cc = std::countr_zero(tm);
                                tm &= tm - 1;
                                const int v = table.value(d, cc, r, Turn::Robber);
                                if (v < best) best = v;
                            }
                        }
                        auto& cell = table.slot(d, c, r, Turn::Cop);
                        if (best > cell) {
                            cell = static_cast<std::uint8_t>(best);
                            changed = true;
                        }
                    }
                }
            }
            if (layer == 0) break;
            // next subset of the same popcount
            const Mask lo = d & (~d + 1);
            const Mask left = d + lo;
            if (left > full) break;
            d = left | (((d ^ left) / lo) >> 2);
        }
    }
    table.stats().wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return table;
}

// ---------------------------------------------------------------------------
// Damage numbers.
// ---------------------------------------------------------------------------

enum class Variant : std::uint8_t { Normal, CopPassesFirst };

struct DamageResult {
    int value = 0;
    Mask best_cop_starts = 0;
    std::vector<int> witness_robber_start;  // per cop start, lowest argmax
    Variant variant = Variant::Normal;
    SolveStats stats;
};

// Root value when the cop starts on `cop_start`: max over robber starts.
// The robber may also start on the cop's vertex (value 0, never the argmax
// unless n == 1).
inline std::pair<int, int> damage_given_start(const Graph& g, const ValueTable& table, int cop_start, Variant variant = Variant::Normal,
                                              Mask allowed_robber_starts = ~Mask{0}) {
    const Turn root_turn = variant == Variant::CopPassesFirst ? Turn::Robber : Turn::Cop;
    int best = 0;
    int witness = cop_start;
    for (int r = 0; r < g.size(); ++r) {
        if (r == cop_start) continue;
        if ((allowed_robber_starts & vbit(r)) == 0) continue;
        const int v = table.value(0, cop_start, r, root_turn);
        if (v > best) {
            best = v;
            witness = r;
        }
    }
    return {best, witness};
}

inline std::pair<int, int> damage_given_start(const Graph& g, int cop_start, Variant variant = Variant::Normal, const SolveBudget& budget = {}) {
    const ValueTable table = solve_values(g, budget);
    return damage_given_start(g, table, cop_start, variant);
}

inline DamageResult damage_number_from_table(const Graph& g, const ValueTable& table, Variant variant, Mask allowed_robber_starts = ~Mask{0}) {
    DamageResult result;
    result.variant = variant;
    result.stats = table.stats();
    result.value = std::numeric_limits<int>::max();
    result.witness_robber_start.resize(static_cast<std::size_t>(g.size()));
    std::vector<int> per_start(static_cast<std::size_t>(g.size()));
    for (int c = 0; c < g.size(); ++c) {
        const auto [v, witness] = damage_given_start(g, table, c, variant, allowed_robber_starts);
        per_start[static_cast<std::size_t>(c)] = v;
        result.witness_robber_start[static_cast<std::size_t>(c)] = witness;
        result.value = std::min(result.value, v);
    }
    for (int c = 0; c < g.size(); ++c)
        if (per_start[static_cast<std::size_t>(c)] == result.value) result.best_cop_starts |= vbit(c);
    return result;
}

inline DamageResult damage_number(const Graph& g, const SolveBudget& budget = {}) {
    return damage_number_from_table(g, solve_values(g, budget), Variant::Normal);
}

inline DamageResult damage_number_prime(const Graph& g, const SolveBudget& budget = {}) {
    const ValueTable table = solve_values(g, budget);
    DamageResult normal = damage_number_from_table(g, table, Variant::Normal);
    DamageResult prime = damage_number_from_table(g, table, Variant::CopPassesFirst);
    if (prime.value != normal.value && prime.value != normal.value + 1)
        throw std::logic_error("dmg' of " + g.name() + " is " + std::to_string(prime.value) + " but dmg is " + std::to_string(normal.value));
    return prime;
}

// min over cop starts of max over allowed robber starts.
inline int damage_number_restricted(const Graph& g, Mask allowed_robber_starts, Variant variant = Variant::Normal, const SolveBudget& budget = {}) {
    if ((allowed_robber_starts & g.all_vertices()) == 0) throw GraphError("damage_number_restricted: empty start set");
    const ValueTable table = solve_values(g, budget);
    return damage_number_from_table(g, table, variant, allowed_robber_starts).value;
}

// ---------------------------------------------------------------------------
// Capture time (classic game: the robber only evades).
// ---------------------------------------------------------------------------

inline constexpr int kInfiniteCapture = -1;

struct CaptureResult {
    std::optional<int> value;         // nullopt == infinity (not copwin)
    std::vector<int> table;           // capt_G(c; r), cop to move, -1 == infinity
    int n = 0;

    int at(int cop, int robber) const { return table[static_cast<std::size_t>(cop) * static_cast<std::size_t>(n) + static_cast<std::size_t>(robber)]; }
};

// Backward induction on "cop captures within k rounds" attractor layers.
inline CaptureResult capture_time(const Graph& g) {
    g.require_connected("capture_time");
    const int n = g.size();
    constexpr int kInf = std::numeric_limits<int>::max();
    std::vector<int> t(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), kInf);
    auto at = [&](int c, int r) -> int& { return t[static_cast<std::size_t>(c) * static_cast<std::size_t>(n) + static_cast<std::size_t>(r)]; };

    bool changed = true;
    while (changed) {
        changed = false;
        for (int c = 0; c < n; ++c)
            for (int r = 0; r < n; ++r) {
                if (c == r) continue;
                int best = kInf;
                for (Mask cm = g.closed(c); cm;) {
                    const int cc = std::countr_zero(cm);
                    cm &= cm - 1;
                    if (cc == r) {
                        best = 1;
                        break;
                    }
                    int worst = 0;
                    for (Mask rm = g.closed(r) & ~vbit(cc); rm;) {
                        const int rr = std::countr_zero(rm);
                        rm &= rm - 1;
                        worst = std::max(worst, at(cc, rr));
                        if (worst == kInf) break;
                    }
                    if (worst != kInf) best = std::min(best, 1 + worst);
                }
                if (best < at(c, r)) {
                    at(c, r) = best;
                    changed = true;
                }
            }
    }

    CaptureResult result;
    result.n = n;
    result.table.resize(t.size());
    int game_value = 0;
    for (int c = 0; c < n; ++c)
        for (int r = 0; r < n; ++r)
            result.table[static_cast<std::size_t>(c) * static_cast<std::size_t>(n) + static_cast<std::size_t>(r)] =
                (c == r) ? 0 : (at(c, r) == kInf ? kInfiniteCapture : at(c, r));
    for (int c = 0; c < n; ++c) {
        int worst = 0;
        for (int r = 0; r < n; ++r) {
            const int v = result.at(c, r);
            if (v == kInfiniteCapture) {
                worst = kInf;
                break;
            }
            worst = std::max(worst, v);
        }
        if (c == 0 || worst < game_value) game_value = worst;
    }
    if (game_value != kInf) result.value = game_value;
    return result;
}

inline int relative_capture_time(const Graph& g, int cop_start, int robber_start) { return capture_time(g).at(cop_start, robber_start); }

// ---------------------------------------------------------------------------
// dmg(G) <= capt(G) - 1 (only meaningful on copwin graphs).
// ---------------------------------------------------------------------------

enum class CheckOutcome : std::uint8_t { Pass, Fail, Skipped };

inline CheckOutcome assert_damage_capt_bound(const Graph& g, const SolveBudget& budget = {}) {
    const CaptureResult capt = capture_time(g);
    if (!capt.value) return CheckOutcome::Skipped;
    const DamageResult dmg = damage_number(g, budget);
    return dmg.value <= *capt.value - 1 ? CheckOutcome::Pass : CheckOutcome::Fail;
}

// ---------------------------------------------------------------------------
// Policy extraction.  Ties break toward the lowest vertex index so that
// transcripts are reproducible.
// ---------------------------------------------------------------------------

inline int optimal_robber_move(const Graph& g, const ValueTable& table, const GameState& s) {
    const int r = s.robber;
    const int gain = (s.damaged & vbit(r)) ? 0 : 1;
    const Mask d2 = s.damaged | vbit(r);
    int best_v = -1;
    int best = r;
    for (Mask tm = g.closed(r); tm;) {
        const int rr = std::countr_zero(tm);
        tm &= tm - 1;
        const int v = gain + (rr == s.cop ? 0 : table.value(d2, s.cop, rr, Turn::Cop));
        if (v > best_v) {
            best_v = v;
            best = rr;
        }
    }
    return best;
}

inline int optimal_cop_move(const Graph& g, const ValueTable& table, const GameState& s) {
    if (g.adjacent(s.cop, s.robber)) return s.robber;
    int best_v = std::numeric_limits<int>::max();
    int best = s.cop;
    for (Mask tm = g.closed(s.cop); tm;) {
        const int cc = std::countr_zero(tm);
        tm &= tm - 1;
        const int v = table.value(s.damaged, cc, s.robber, Turn::Robber);
        if (v < best_v) {
            best_v = v;
            best = cc;
        }
    }
    return best;
}

}  // namespace damage
