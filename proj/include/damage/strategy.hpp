#pragma once

// Executable strategies, a deterministic simulator, and an exact
// best-response solver.  Strategies are pure state machines: all evolving
// internal state lives in a single 64-bit memory word that is passed in and
// out, so the best-response solver can fold it into its state space.

#include <cstdint>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "damage/game.hpp"
#include "damage/graph.hpp"

namespace damage {

enum class Role : std::uint8_t { Cop, Robber };

class Strategy {
public:
    virtual ~Strategy() = default;
    virtual Role role() const = 0;
    virtual std::string name() const = 0;

    // Initial placement.  `opponent` is the cop's placement when placing the
    // robber; nullopt when placing the cop (the cop places first).
    virtual int place(const Graph& g, std::optional<int> opponent, std::uint64_t& mem) const = 0;

    // Action at own turn; must return a vertex in N[own position].
    virtual int act(const Graph& g, const GameState& s, std::uint64_t& mem) const = 0;

    // Called after each opponent action (from == to is a pass).
    virtual void observe(const Graph& g, int from, int to, std::uint64_t& mem) const {
        (void)g;
        (void)from;
        (void)to;
        (void)mem;
    }
};

// ---------------------------------------------------------------------------
// Cycle helpers (cycles carry the canonical labeling u_i ~ u_{i+1} mod m).
// ---------------------------------------------------------------------------

namespace detail {

inline int require_canonical_cycle(const Graph& g, const char* who) {
    const int m = g.size();
    if (m < 3) throw GraphError(std::string(who) + ": host is not a cycle");
    for (int i = 0; i < m; ++i)
        if (g.degree(i) != 2 || !g.adjacent(i, (i + 1) % m))
            throw GraphError(std::string(who) + ": host is not a canonically labeled cycle");
    return m;
}

inline int cyc_dist(int a, int b, int m) {
    const int d = (a - b) % m;
    const int e = d < 0 ? d + m : d;
    return std::min(e, m - e);
}

inline int cyc_inc(int a, int m) { return (a + 1) % m; }
inline int cyc_dec(int a, int m) { return (a + m - 1) % m; }

inline void require_product_host(const Graph& host, const Graph& g, const Graph& h, const char* who) {
    if (!(cartesian_product(g, h) == host))
        throw GraphError(std::string(who) + ": host is not the product of the supplied factors");
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Cop strategies.
// ---------------------------------------------------------------------------

// Passes forever; captures a robber that becomes adjacent.  Optimal on C4
// and C5, suboptimal on C6.
class CopStationary final : public Strategy {
public:
    explicit CopStationary(const Graph& g) : start_(lowest_center(g)) {}

    Role role() const override { return Role::Cop; }
    std::string name() const override { return "stationary"; }

    int place(const Graph&, std::optional<int>, std::uint64_t& mem) const override {
        mem = 0;
        return start_;
    }

    int act(const Graph& g, const GameState& s, std::uint64_t&) const override {
        return g.adjacent(s.cop, s.robber) ? s.robber : s.cop;
    }

private:
    static int lowest_center(const Graph& g) { return std::countr_zero(radius_ecc_centers(g).centers); }

    int start_;
};

// The cycle-strategy: mirror the robber's index change in the opposite
// direction; pass when the robber passed, capturing if adjacent.  With
// initial_pass the first cop action is a forced pass (the dmg' setting).
class CopCycleOpposition final : public Strategy {
public:
    CopCycleOpposition(const Graph& g, bool initial_pass)
        : m_(detail::require_canonical_cycle(g, "cop_cycle_opposition")), initial_pass_(initial_pass) {}

    Role role() const override { return Role::Cop; }
    std::string name() const override { return initial_pass_ ? "cycle-opposition-pass" : "cycle-opposition"; }

    int place(const Graph&, std::optional<int>, std::uint64_t& mem) const override {
        mem = 0;
        return 0;
    }

    int act(const Graph& g, const GameState& s, std::uint64_t& mem) const override {
        if (mem < 4) {
            // First cop action: no robber move observed yet.
            mem = 4;  // mark started; robber's observe will overwrite the code
            if (initial_pass_) return s.cop;
            return g.adjacent(s.cop, s.robber) ? s.robber : s.cop;
        }
        switch (mem & 3) {
            case 1: return detail::cyc_dec(s.cop, m_);  // robber increased
            case 2: return detail::cyc_inc(s.cop, m_);  // robber decreased
            default: return g.adjacent(s.cop, s.robber) ? s.robber : s.cop;
        }
    }

    void observe(const Graph&, int from, int to, std::uint64_t& mem) const override {
        int code = 0;
        if (to == detail::cyc_inc(from, m_)) code = 1;
        else if (to == detail::cyc_dec(from, m_)) code = 2;
        mem = 4 | static_cast<std::uint64_t>(code);
    }

private:
    int m_;
    bool initial_pass_;
};

// The C6 oscillation strategy: cop starts on u_0, answers
// a robber on u_3 by holding u_1 and a robber on u_4 by holding u_0.
class CopOscillationC6 final : public Strategy {
public:
    explicit CopOscillationC6(const Graph& g) {
        if (detail::require_canonical_cycle(g, "cop_oscillation_c6") != 6)
            throw GraphError("cop_oscillation_c6: host must be cycle:6");
    }

    Role role() const override { return Role::Cop; }
    std::string name() const override { return "oscillation"; }

    int place(const Graph&, std::optional<int>, std::uint64_t& mem) const override {
        mem = 0;
        return 0;
    }

    int act(const Graph& g, const GameState& s, std::uint64_t&) const override {
        if (s.cop != 0 && s.cop != 1) throw GraphError("cop_oscillation_c6: cop must start on u_0");
        if (s.robber == 3) return 1;
        if (s.robber == 4) return 0;
        return g.adjacent(s.cop, s.robber) ? s.robber : s.cop;
    }
};

// Places on a center of a tree and walks the unique shortest path toward
// the robber.
class CopTreeCenterPursuit final : public Strategy {
public:
    explicit CopTreeCenterPursuit(const Graph& g) : dist_(all_pairs_distance(g)) {
        if (!is_tree(g)) throw GraphError("cop_tree_center_pursuit: host is not a tree");
        start_ = std::countr_zero(radius_ecc_centers(g).centers);
    }

    Role role() const override { return Role::Cop; }
    std::string name() const override { return "tree-center"; }

    int place(const Graph&, std::optional<int>, std::uint64_t& mem) const override {
        mem = 0;
        return start_;
    }

    int act(const Graph& g, const GameState& s, std::uint64_t&) const override {
        if (s.cop == s.robber) return s.cop;
        for (Mask nm = g.neighbours(s.cop); nm;) {
            const int w = std::countr_zero(nm);
            nm &= nm - 1;
            if (dist_(w, s.robber) == dist_(s.cop, s.robber) - 1) return w;
        }
        return s.cop;
    }

private:
    DistanceMatrix dist_;
    int start_ = 0;
};

// ---------------------------------------------------------------------------
// Product cop strategies.  Both track virtual factor games in memory:
// whenever the robber acts, the vertex it acted on is marked damaged in each
// factor's virtual damaged set, and the factor policies (extracted from the
// factors' solved value tables) answer moves within the matching coordinate.
//
// Memory word layout (factor sizes gs + hs <= 54):
//   bits [0, gs)            virtual damaged set of the first factor
//   bits [gs, gs + hs)      virtual damaged set of the second factor
//   bits 56..57             robber's last action: 0 pass, 1 first, 2 second
//   bits 58..59             mode: 0 free, 1 matched-first, 2 matched-second
//   bit  60                 started flag
// ---------------------------------------------------------------------------

namespace detail {

struct ProductMem {
    static constexpr int kCodeShift = 56;
    static constexpr int kModeShift = 58;
    static constexpr std::uint64_t kStarted = std::uint64_t{1} << 60;

    static Mask factor_damage(std::uint64_t mem, int offset, int size) { return (mem >> offset) & ((Mask{1} << size) - 1); }
    static int code(std::uint64_t mem) { return static_cast<int>((mem >> kCodeShift) & 3); }
    static int mode(std::uint64_t mem) { return static_cast<int>((mem >> kModeShift) & 3); }
    static void set_code(std::uint64_t& mem, int code) { mem = (mem & ~(std::uint64_t{3} << kCodeShift)) | (static_cast<std::uint64_t>(code) << kCodeShift); }
    static void set_mode(std::uint64_t& mem, int mode) { mem = (mem & ~(std::uint64_t{3} << kModeShift)) | (static_cast<std::uint64_t>(mode) << kModeShift); }
};

}  // namespace detail

// Matches the coordinate the robber last changed; within the matched copy
// the cop answers second-coordinate moves with the optimal policy for the
// second factor.
class CopCoordinateMatch final : public Strategy {
public:
    CopCoordinateMatch(const Graph& host, Graph factor_g, Graph factor_h, const SolveBudget& budget = {})
        : g_(std::move(factor_g)), h_(std::move(factor_h)), h_table_(solve_values(h_, budget)), g_dist_(all_pairs_distance(g_)) {
        detail::require_product_host(host, g_, h_, "cop_coordinate_match");
        if (g_.size() + h_.size() > 54) throw GraphError("cop_coordinate_match: factors too large for strategy memory");
    }

    Role role() const override { return Role::Cop; }
    std::string name() const override { return "coordinate-match"; }

    int place(const Graph&, std::optional<int>, std::uint64_t& mem) const override {
        mem = 0;
        return product_flat(preferred_vertex(g_), preferred_vertex(h_), h_.size());
    }

    int act(const Graph& host, const GameState& s, std::uint64_t& mem) const override {
        if (host.adjacent(s.cop, s.robber)) return s.robber;
        const auto c = product_coords(s.cop, h_.size());
        const auto r = product_coords(s.robber, h_.size());
        if (c.g_coord != r.g_coord) {
            // Not yet engaged: close the first coordinate one step.
            for (Mask nm = g_.neighbours(c.g_coord); nm;) {
                const int w = std::countr_zero(nm);
                nm &= nm - 1;
                if (g_dist_(w, r.g_coord) < g_dist_(c.g_coord, r.g_coord)) return product_flat(w, c.h_coord, h_.size());
            }
            return s.cop;
        }
        switch (detail::ProductMem::code(mem)) {
            case 1: {
                // The robber left the copy; with coordinates matched this
                // cannot happen, but fall back to re-matching.
                return product_flat(r.g_coord, c.h_coord, h_.size());
            }
            case 2: {
                const Mask dh = detail::ProductMem::factor_damage(mem, g_.size(), h_.size());
                const GameState virt{dh, static_cast<std::uint8_t>(c.h_coord), static_cast<std::uint8_t>(r.h_coord), Turn::Cop};
                return product_flat(c.g_coord, optimal_cop_move(h_, h_table_, virt), h_.size());
            }
            default: return s.cop;
        }
    }

    void observe(const Graph&, int from, int to, std::uint64_t& mem) const override {
        const auto f = product_coords(from, h_.size());
        const auto t = product_coords(to, h_.size());
        mem |= vbit(f.g_coord);
        mem |= vbit(f.h_coord) << g_.size();
        detail::ProductMem::set_code(mem, from == to ? 0 : (t.g_coord != f.g_coord ? 1 : 2));
    }

private:
    static int preferred_vertex(const Graph& g) {
        for (int v = 0; v < g.size(); ++v)
            if (is_universal(g, v)) return v;
        return std::countr_zero(radius_ecc_centers(g).centers);
    }

    Graph g_, h_;
    ValueTable h_table_;
    DistanceMatrix g_dist_;
};

// The two-phase product strategy: open with an optimal first-factor move;
// match a coordinate as soon as the robber allows it; otherwise answer the
// robber's last move in the same coordinate with that factor's optimal
// policy, and answer passes with passes.
class CopProductTwoPhase final : public Strategy {
public:
    CopProductTwoPhase(const Graph& host, Graph factor_g, Graph factor_h, const SolveBudget& budget = {})
        : g_(std::move(factor_g)), h_(std::move(factor_h)) {
        detail::require_product_host(host, g_, h_, "cop_product_two_phase");
        if (g_.size() + h_.size() > 54) throw GraphError("cop_product_two_phase: factors too large for strategy memory");
        g_table_ = std::make_unique<ValueTable>(solve_values(g_, budget));
        h_table_ = std::make_unique<ValueTable>(solve_values(h_, budget));
        const DamageResult dg = damage_number_from_table(g_, *g_table_, Variant::Normal);
        const DamageResult dh = damage_number_from_table(h_, *h_table_, Variant::CopPassesFirst);
        g_start_ = std::countr_zero(dg.best_cop_starts);
        h_start_ = std::countr_zero(dh.best_cop_starts);
    }

    Role role() const override { return Role::Cop; }
    std::string name() const override { return "two-phase"; }

    int place(const Graph&, std::optional<int>, std::uint64_t& mem) const override {
        mem = 0;
        return product_flat(g_start_, h_start_, h_.size());
    }

    int act(const Graph& host, const GameState& s, std::uint64_t& mem) const override {
        if (host.adjacent(s.cop, s.robber)) return s.robber;
        const auto c = product_coords(s.cop, h_.size());
        const auto r = product_coords(s.robber, h_.size());
        const int code = detail::ProductMem::code(mem);

        if (c.g_coord == r.g_coord) detail::ProductMem::set_mode(mem, 1);
        else if (c.h_coord == r.h_coord) detail::ProductMem::set_mode(mem, 2);

        const int mode = detail::ProductMem::mode(mem);
        if (mode == 1) return matched_move(c, r, code, mem, /*first_matched=*/true);
        if (mode == 2) return matched_move(c, r, code, mem, /*first_matched=*/false);

        if (!(mem & detail::ProductMem::kStarted)) {
            // Round one: change the first coordinate per the optimal
            // first-factor strategy.
            mem |= detail::ProductMem::kStarted;
            const int target = g_policy_move(c.g_coord, r.g_coord, mem);
            if (target == r.g_coord) detail::ProductMem::set_mode(mem, 1);
            return product_flat(target, c.h_coord, h_.size());
        }

        // Rule (1): match a coordinate whenever a single move can.
        if (g_.adjacent(c.g_coord, r.g_coord)) {
            detail::ProductMem::set_mode(mem, 1);
            return product_flat(r.g_coord, c.h_coord, h_.size());
        }
        if (h_.adjacent(c.h_coord, r.h_coord)) {
            detail::ProductMem::set_mode(mem, 2);
            return product_flat(c.g_coord, r.h_coord, h_.size());
        }
        // Rule (2): answer in the coordinate the robber last changed.
        if (code == 1) {
            const int target = g_policy_move(c.g_coord, r.g_coord, mem);
            if (target == r.g_coord) detail::ProductMem::set_mode(mem, 1);
            return product_flat(target, c.h_coord, h_.size());
        }
        if (code == 2) {
            const int target = h_policy_move(c.h_coord, r.h_coord, mem);
            if (target == r.h_coord) detail::ProductMem::set_mode(mem, 2);
            return product_flat(c.g_coord, target, h_.size());
        }
        return s.cop;
    }

    void observe(const Graph&, int from, int to, std::uint64_t& mem) const override {
        const auto f = product_coords(from, h_.size());
        const auto t = product_coords(to, h_.size());
        mem |= vbit(f.g_coord);
        mem |= vbit(f.h_coord) << g_.size();
        detail::ProductMem::set_code(mem, from == to ? 0 : (t.g_coord != f.g_coord ? 1 : 2));
    }

private:
    int matched_move(const ProductVertex& c, const ProductVertex& r, int code, std::uint64_t& mem, bool first_matched) const {
        const Graph& across = first_matched ? g_ : h_;   // matched coordinate's factor
        const int c_m = first_matched ? c.g_coord : c.h_coord;
        const int r_m = first_matched ? r.g_coord : r.h_coord;
        const int c_o = first_matched ? c.h_coord : c.g_coord;
        const int r_o = first_matched ? r.h_coord : r.g_coord;
        const int match_code = first_matched ? 1 : 2;
        int target_m = c_m;
        int target_o = c_o;
        if (code == match_code) {
            // The robber changed the matched coordinate: chase it.
            target_m = across.adjacent(c_m, r_m) || c_m == r_m ? r_m : c_m;
        } else if (code != 0) {
            target_o = first_matched ? h_policy_move(c_o, r_o, mem) : g_policy_move(c_o, r_o, mem);
        }
        return first_matched ? product_flat(target_m, target_o, h_.size()) : product_flat(target_o, target_m, h_.size());
    }

    int g_policy_move(int cop, int robber, std::uint64_t mem) const {
        const Mask dg = detail::ProductMem::factor_damage(mem, 0, g_.size());
        if (cop == robber) return cop;
        return optimal_cop_move(g_, *g_table_, GameState{dg, static_cast<std::uint8_t>(cop), static_cast<std::uint8_t>(robber), Turn::Cop});
    }

    int h_policy_move(int cop, int robber, std::uint64_t mem) const {
        const Mask dh = detail::ProductMem::factor_damage(mem, g_.size(), h_.size());
        if (cop == robber) return cop;
        return optimal_cop_move(h_, *h_table_, GameState{dh, static_cast<std::uint8_t>(cop), static_cast<std::uint8_t>(robber), Turn::Cop});
    }

    Graph g_, h_;
    std::unique_ptr<ValueTable> g_table_, h_table_;
    int g_start_ = 0, h_start_ = 0;
};

// Passes when the robber sits in the equidistant set of the cop's vertex;
// otherwise closes the coordinate with the larger cop-robber distance along
// the factor tree's unique shortest path.
class CopTreeProductEquidistant final : public Strategy {
public:
    CopTreeProductEquidistant(const Graph& host, Graph factor_g, Graph factor_h)
        : g_(std::move(factor_g)), h_(std::move(factor_h)), g_dist_(all_pairs_distance(g_)), h_dist_(all_pairs_distance(h_)) {
        detail::require_product_host(host, g_, h_, "cop_tree_product_equidistant");
        if (!is_tree(g_) || !is_tree(h_)) throw GraphError("cop_tree_product_equidistant: both factors must be trees");
        g_start_ = std::countr_zero(radius_ecc_centers(g_).centers);
        h_start_ = std::countr_zero(radius_ecc_centers(h_).centers);
    }

    Role role() const override { return Role::Cop; }
    std::string name() const override { return "tree-equidistant"; }

    int place(const Graph&, std::optional<int>, std::uint64_t& mem) const override {
        mem = 0;
        return product_flat(g_start_, h_start_, h_.size());
    }

    int act(const Graph& host, const GameState& s, std::uint64_t&) const override {
        if (host.adjacent(s.cop, s.robber)) return s.robber;
        const auto c = product_coords(s.cop, h_.size());
        const auto r = product_coords(s.robber, h_.size());
        const int dg = g_dist_(c.g_coord, r.g_coord);
        const int dh = h_dist_(c.h_coord, r.h_coord);
        if (dg == dh) return s.cop;  // equidistant: pass
        if (dg > dh) return product_flat(step_toward(g_, g_dist_, c.g_coord, r.g_coord), c.h_coord, h_.size());
        return product_flat(c.g_coord, step_toward(h_, h_dist_, c.h_coord, r.h_coord), h_.size());
    }

private:
    static int step_toward(const Graph& t, const DistanceMatrix& dist, int from, int to) {
        for (Mask nm = t.neighbours(from); nm;) {
            const int w = std::countr_zero(nm);
            nm &= nm - 1;
            if (dist(w, to) == dist(from, to) - 1) return w;
        }
        return from;
    }

    Graph g_, h_;
    DistanceMatrix g_dist_, h_dist_;
    int g_start_ = 0, h_start_ = 0;
};

// Plays the argmin of the solved value table; the reference cop.
class CopSolverOptimal final : public Strategy {
public:
    CopSolverOptimal(const Graph& g, const ValueTable& table) : table_(&table) {
        if (table.n() != g.size()) throw GraphError("cop_solver_optimal: table/graph mismatch");
        start_ = std::countr_zero(damage_number_from_table(g, table, Variant::Normal).best_cop_starts);
    }

    Role role() const override { return Role::Cop; }
    std::string name() const override { return "solver-optimal"; }

    int place(const Graph&, std::optional<int>, std::uint64_t& mem) const override {
        mem = 0;
        return start_;
    }

    int act(const Graph& g, const GameState& s, std::uint64_t&) const override { return optimal_cop_move(g, *table_, s); }

private:
    const ValueTable* table_;
    int start_;
};

// ---------------------------------------------------------------------------
// Robber strategies.
// ---------------------------------------------------------------------------

// Plays the argmax of the solved value table; the reference robber.  Among
// value-maximal moves it prefers the one that reaches the next damage event
// soonest: without the tie-break, a robber sitting on a damaged vertex can
// circle value-preserving states forever and never cash the value in.
class RobberSolverOptimal final : public Strategy {
public:
    RobberSolverOptimal(const Graph& g, const ValueTable& table) : table_(&table) {
        if (table.n() != g.size()) throw GraphError("robber_solver_optimal: table/graph mismatch");
    }

    Role role() const override { return Role::Robber; }
    std::string name() const override { return "solver-optimal"; }

    int place(const Graph& g, std::optional<int> opponent, std::uint64_t& mem) const override {
        mem = 0;
        const int cop = opponent.value_or(0);
        int best = cop == 0 && g.size() > 1 ? 1 : 0;
        int best_v = -1;
        for (int r = 0; r < g.size(); ++r) {
            if (r == cop) continue;
            const int v = table_->value(0, cop, r, Turn::Cop);
            if (v > best_v) {
                best_v = v;
                best = r;
            }
        }
        return best;
    }

    int act(const Graph& g, const GameState& s, std::uint64_t&) const override {
        const std::vector<int>& rank = layer_ranks(g, s.damaged);
        int best = s.robber, best_v = -1, best_rank = kInf;
        for (Mask tm = g.closed(s.robber); tm;) {
            const int target = std::countr_zero(tm);
            tm &= tm - 1;
            const StepOutcome out = step(g, s, target);
            const int gain = out.newly_damaged >= 0 ? 1 : 0;
            const int v = gain + (out.terminal ? 0 : table_->value(out.next.damaged, out.next.cop, out.next.robber, out.next.to_move));
            int rk;
            if (gain || out.terminal) rk = 0;  // the damage event happens now (or the game ends)
            else rk = rank[state_index(g, out.next.cop, out.next.robber, out.next.to_move)];
            if (v > best_v || (v == best_v && rk < best_rank)) {
                best_v = v;
                best_rank = rk;
                best = target;
            }
        }
        return best;
    }

private:
    static constexpr int kInf = std::numeric_limits<int>::max() / 2;

    static std::size_t state_index(const Graph& g, int c, int r, Turn t) {
        return (static_cast<std::size_t>(c) * static_cast<std::size_t>(g.size()) + static_cast<std::size_t>(r)) * 2 +
               static_cast<std::size_t>(t);
    }

    // Within a fixed damaged set, the number of plies until the next new
    // damage under value-optimal play (robber hurries, cop stalls).
    const std::vector<int>& layer_ranks(const Graph& g, Mask d) const {
        const auto [it, fresh] = ranks_.try_emplace(d);
        if (!fresh) return it->second;
        const int n = g.size();
        std::vector<int>& rank = it->second;
        rank.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n) * 2, kInf);

        for (int c = 0; c < n; ++c)
            for (int r = 0; r < n; ++r)
                if (c != r && (d & vbit(r)) == 0) rank[state_index(g, c, r, Turn::Robber)] = 0;

        bool changed = true;
        while (changed) {
            changed = false;
            for (int c = 0; c < n; ++c)
                for (int r = 0; r < n; ++r) {
                    if (c == r) continue;
                    // Robber on a damaged vertex: hurry through value-preserving moves.
                    if (d & vbit(r)) {
                        const int v = table_->value(d, c, r, Turn::Robber);
                        int best = kInf;
                        for (Mask tm = g.closed(r); tm;) {
                            const int rr = std::countr_zero(tm);
                            tm &= tm - 1;
                            if (rr == c) continue;  // capture keeps value only when v == 0; no progress there
                            if (table_->value(d, c, rr, Turn::Cop) != v) continue;
                            best = std::min(best, 1 + rank[state_index(g, c, rr, Turn::Cop)]);
                        }
                        std::size_t i = state_index(g, c, r, Turn::Robber);
                        if (best < rank[i]) {
                            rank[i] = best;
                            changed = true;
                        }
                    }
                    // Cop to move: assume it stalls as long as possible among its optimal moves.
                    {
                        const int v = table_->value(d, c, r, Turn::Cop);
                        int worst = 0;
                        for (Mask tm = g.closed(c); tm;) {
                            const int cc = std::countr_zero(tm);
                            tm &= tm - 1;
                            if (cc == r) continue;  // capture is optimal only when v == 0
                            if (table_->value(d, cc, r, Turn::Robber) != v) continue;
                            worst = std::max(worst, 1 + rank[state_index(g, cc, r, Turn::Robber)]);
                        }
                        worst = std::min(worst, kInf);
                        std::size_t i = state_index(g, c, r, Turn::Cop);
                        if (worst < rank[i]) {
                            rank[i] = worst;
                            changed = true;
                        }
                    }
                }
        }
        return rank;
    }

    const ValueTable* table_;
    mutable std::unordered_map<Mask, std::vector<int>> ranks_;
};

namespace detail {

// Shared movement logic for the shadow strategy on cycle products.  The
// robber sweeps one factor ("A", size ma) inside copies indexed by the other
// ("B", size mb), tracking the cop's projection onto the sweep cycle (the
// shadow).  The robber keeps sweep distance at least two from the shadow at
// the end of every one of its turns; under that invariant no robber action
// can be captured, and a copy change is never adjacent to the cop.  Within a
// copy the robber works the safe arc -- the ma-3 sweep vertices at distance
// two or more from the shadow -- heading for its closest fresh vertex, and
// moves to the next copy only once the arc holds nothing fresh.
struct CycleShadow {
    int ma = 0, mb = 0;
    bool sweep_is_first = false;  // true: A is the first product factor
    int h_size = 0;               // second-factor size (flat encoding)

    int a_of(int flat) const { return sweep_is_first ? flat / h_size : flat % h_size; }
    int b_of(int flat) const { return sweep_is_first ? flat % h_size : flat / h_size; }
    int flat_of(int a, int b) const { return sweep_is_first ? a * h_size + b : b * h_size + a; }

    int quota() const { return (ma - 1) / 2; }

    // dir is the robber's persistent rotation sense through the copies:
    // 0 before the first copy change, then +1 or -1, flipped only when the
    // cop physically blocks a seam.  A stateless direction choice is
    // manipulable: the cop can re-aim it every round by wiggling the shadow
    // and walk the robber between two spent copies forever.
    int shadow_move(const Graph& host, const GameState& s, int& dir) const {
        const auto fresh = [&](int v) { return (s.damaged & vbit(v)) == 0; };
        const int a = a_of(s.robber);
        const int b = b_of(s.robber);
        const int shadow = a_of(s.cop);
        const int d = cyc_dist(a, shadow, ma);

        // Safe arc for the current shadow: shadow+2 .. shadow+ma-2.
        const int lo = (shadow + 2) % ma;
        const int arc_len = ma - 3;

        // First transit heads toward the nearest copy that still has fresh
        // vertices inside the safe arc (falling back to any fresh vertex);
        // afterwards the stored rotation sense takes over.
        const auto arc_fresh = [&](int j) {
            for (int off = 0; off < arc_len; ++off)
                if (fresh(flat_of((lo + off) % ma, j))) return true;
            return false;
        };
        const auto any_fresh = [&](int j) {
            for (int x = 0; x < ma; ++x)
                if (fresh(flat_of(x, j))) return true;
            return false;
        };
        int transit_dir = dir;
        if (transit_dir == 0) {
            transit_dir = 1;
            bool found = false;
            for (int k = 1; !found && 2 * k <= mb; ++k) {
                const bool f = arc_fresh((b + k) % mb);
                const bool r = arc_fresh((b + mb - k) % mb);
                if (f || r) { transit_dir = f ? 1 : -1; found = true; }
            }
            for (int k = 1; !found && 2 * k <= mb; ++k) {
                const bool f = any_fresh((b + k) % mb);
                const bool r = any_fresh((b + mb - k) % mb);
                if (f || r) { transit_dir = f ? 1 : -1; found = true; }
            }
        }
        const int transit = flat_of(a, (b + mb + transit_dir) % mb);
        const int transit_back = flat_of(a, (b + mb - transit_dir) % mb);

        if (d <= 1) {
            // The cop's move closed the shadow to within one.  Stepping away
            // along the sweep restores the distance-two invariant, and while
            // it lands on fresh ground the retreat earns its keep.  Over
            // spent ground prefer changing copies: on a length-four sweep the
            // cop can flip the shadow onto the robber every round, and
            // bouncing between two damaged vertices forever concedes the
            // copy.  Every candidate is vetted against the cop's actual
            // closed neighbourhood, since the invariant does not hold here.
            const Mask danger = host.closed(s.cop);
            const auto safe = [&](int v) { return (danger & vbit(v)) == 0; };
            const int inc = cyc_inc(a, ma);
            const int dec = cyc_dec(a, ma);
            const bool inc_farther = cyc_dist(inc, shadow, ma) >= cyc_dist(dec, shadow, ma);
            const int away = flat_of(inc_farther ? inc : dec, b);
            const int other = flat_of(inc_farther ? dec : inc, b);
            const auto pick = [&](int v) {
                if (v == transit) dir = transit_dir;
                if (v == transit_back) dir = -transit_dir;
                return v;
            };
            // While the copy holds anything fresh, stepping away first keeps
            // the robber rolling around the sweep cycle: a cop who keeps
            // pressing pushes the robber over every position of the copy and
            // donates each fresh vertex the robber leaves.  Once the copy is
            // spent -- or on a length-four sweep, where the away step is the
            // antipode and rolling degenerates into a two-vertex bounce --
            // the robber prefers to change copies.
            if (fresh(away) || (ma > 4 && any_fresh(b))) {
                for (const int v : {away, transit, transit_back, static_cast<int>(s.robber), other})
                    if (safe(v)) return pick(v);
            } else {
                for (const int v : {transit, transit_back, away, static_cast<int>(s.robber), other})
                    if (safe(v)) return pick(v);
            }
            return s.robber;  // capture is unavoidable
        }

        // Closest fresh vertex of the safe arc (shadow+2 .. shadow+ma-2),
        // ties toward the increasing index.
        const int a_off = ((a - lo) % ma + ma) % ma;
        int best_off = -1;
        for (int off = 0; off < arc_len; ++off) {
            if (!fresh(flat_of((lo + off) % ma, b))) continue;
            const int gap = off > a_off ? off - a_off : a_off - off;
            const int best_gap = best_off < 0 ? std::numeric_limits<int>::max()
                                              : (best_off > a_off ? best_off - a_off : a_off - best_off);
            if (gap < best_gap || (gap == best_gap && off > best_off)) best_off = off;
        }
        if (best_off >= 0) {
            if (best_off == a_off) return s.robber;  // damage by passing
            // One step toward it, staying inside the arc.
            return flat_of(best_off > a_off ? cyc_inc(a, ma) : cyc_dec(a, ma), b);
        }

        // Nothing fresh the cop cannot defend here: change copies.
        dir = transit_dir;
        return transit;
    }
};

// Rotation sense packed into two memory bits at `shift`: 0 unset, 1 forward,
// 2 backward.
inline int unpack_dir(std::uint64_t mem, int shift) {
    const std::uint64_t code = (mem >> shift) & 3;
    return code == 1 ? 1 : code == 2 ? -1 : 0;
}
inline void pack_dir(std::uint64_t& mem, int shift, int dir) {
    const std::uint64_t code = dir > 0 ? 1 : dir < 0 ? 2 : 0;
    mem = (mem & ~(std::uint64_t{3} << shift)) | (code << shift);
}

}  // namespace detail

// The shadow strategy on C_m box C_n (m, n >= 4): sweep dmg(C_A) vertices
// per copy of the more profitable factor C_A, tracking the cop's shadow.
class RobberShadowCycleProduct final : public Strategy {
public:
    RobberShadowCycleProduct(const Graph& host, const Graph& factor_g, const Graph& factor_h) {
        const int m = detail::require_canonical_cycle(factor_g, "robber_shadow_cycle_product");
        const int n = detail::require_canonical_cycle(factor_h, "robber_shadow_cycle_product");
        if (m < 4 || n < 4) throw GraphError("robber_shadow_cycle_product: both cycles must have length >= 4");
        detail::require_product_host(host, factor_g, factor_h, "robber_shadow_cycle_product");
        const int first_yield = ((m - 1) / 2) * n;
        const int second_yield = ((n - 1) / 2) * m;
        shadow_.sweep_is_first = first_yield >= second_yield;
        shadow_.ma = shadow_.sweep_is_first ? m : n;
        shadow_.mb = shadow_.sweep_is_first ? n : m;
        shadow_.h_size = n;
    }

    Role role() const override { return Role::Robber; }
    std::string name() const override { return "shadow"; }

    int place(const Graph&, std::optional<int> opponent, std::uint64_t& mem) const override {
        mem = 0;
        const int cop = opponent.value_or(0);
        // Same copy as the cop, sweep distance two away.
        return shadow_.flat_of((shadow_.a_of(cop) + 2) % shadow_.ma, shadow_.b_of(cop));
    }

    // Memory: bits [0, 2) = rotation sense (0 unset, 1 forward, 2 backward).
    int act(const Graph& host, const GameState& s, std::uint64_t& mem) const override {
        int dir = detail::unpack_dir(mem, 0);
        const int to = shadow_.shadow_move(host, s, dir);
        detail::pack_dir(mem, 0, dir);
        return to;
    }

private:
    detail::CycleShadow shadow_;
};

// Even-times-even opening: start diagonally adjacent to the cop, sweep half
// the first copy to bank dmg(C_A)+1 damaged vertices, then continue with the
// shadow strategy.
class RobberEvenProductOpening final : public Strategy {
public:
    RobberEvenProductOpening(const Graph& host, const Graph& factor_g, const Graph& factor_h) {
        const int m = detail::require_canonical_cycle(factor_g, "robber_even_product_opening");
        const int n = detail::require_canonical_cycle(factor_h, "robber_even_product_opening");
        if (m < 4 || n < 4 || m % 2 != 0 || n % 2 != 0)
            throw GraphError("robber_even_product_opening: both cycles must be even with length >= 4");
        detail::require_product_host(host, factor_g, factor_h, "robber_even_product_opening");
        const int first_yield = ((m - 1) / 2) * n;
        const int second_yield = ((n - 1) / 2) * m;
        shadow_.sweep_is_first = first_yield >= second_yield;
        shadow_.ma = shadow_.sweep_is_first ? m : n;
        shadow_.mb = shadow_.sweep_is_first ? n : m;
        shadow_.h_size = n;
    }

    Role role() const override { return Role::Robber; }
    std::string name() const override { return "even-opening"; }

    // Memory: bit 63 = opening finished; bits [0, 8) = sweep target index;
    // bits [8, 10) = rotation sense for the shadow phase.
    int place(const Graph&, std::optional<int> opponent, std::uint64_t& mem) const override {
        const int cop = opponent.value_or(0);
        const int ca = shadow_.a_of(cop);
        const int cb = shadow_.b_of(cop);
        mem = static_cast<std::uint64_t>((ca + shadow_.ma / 2) % shadow_.ma);
        return shadow_.flat_of((ca + 1) % shadow_.ma, (cb + 1) % shadow_.mb);
    }

    int act(const Graph& host, const GameState& s, std::uint64_t& mem) const override {
        const auto shadow_play = [&] {
            int dir = detail::unpack_dir(mem, 8);
            const int to = shadow_.shadow_move(host, s, dir);
            detail::pack_dir(mem, 8, dir);
            return to;
        };
        if (mem >> 63) return shadow_play();
        const auto safe = [&](int v) { return (host.closed(s.cop) & vbit(v)) == 0; };
        const int a = shadow_.a_of(s.robber);
        const int b = shadow_.b_of(s.robber);
        const int target = static_cast<int>(mem & 0xff);
        if (a == target) {
            // Half-copy sweep complete: bank this vertex and change copies.
            mem |= std::uint64_t{1} << 63;
            const int fwd = shadow_.flat_of(a, (b + 1) % shadow_.mb);
            const int bwd = shadow_.flat_of(a, (b + shadow_.mb - 1) % shadow_.mb);
            if (safe(fwd)) {
                detail::pack_dir(mem, 8, 1);
                return fwd;
            }
            if (safe(bwd)) {
                detail::pack_dir(mem, 8, -1);
                return bwd;
            }
            return shadow_play();
        }
        const int next = shadow_.flat_of(detail::cyc_inc(a, shadow_.ma), b);
        if (safe(next)) return next;
        // The scripted run is blocked: abandon the opening.
        mem |= std::uint64_t{1} << 63;
        return shadow_play();
    }

private:
    detail::CycleShadow shadow_;
};

// ---------------------------------------------------------------------------
// Simulator.
// ---------------------------------------------------------------------------

struct TranscriptEntry {
    int round;
    Role actor;
    int from;
    int to;
    int damaged_vertex;  // -1 if none
};

enum class Termination : std::uint8_t { Capture, StateCycle, RoundCap };

struct Transcript {
    int cop_start = 0;
    int robber_start = 0;
    std::vector<TranscriptEntry> moves;
    Mask final_damaged = 0;
    Termination termination = Termination::RoundCap;
};

inline Transcript simulate(const Graph& g, const Strategy& cop, const Strategy& robber, int round_cap = 4096) {
    if (cop.role() != Role::Cop || robber.role() != Role::Robber) throw GraphError("simulate: strategies have the wrong roles");
    Transcript tr;
    std::uint64_t cop_mem = 0, robber_mem = 0;
    tr.cop_start = cop.place(g, std::nullopt, cop_mem);
    tr.robber_start = robber.place(g, tr.cop_start, robber_mem);
    GameState s{0, static_cast<std::uint8_t>(tr.cop_start), static_cast<std::uint8_t>(tr.robber_start), Turn::Cop};
    if (tr.cop_start == tr.robber_start) {
        tr.termination = Termination::Capture;
        return tr;
    }

    struct Snapshot {
        Mask damaged;
        int cop, robber;
        std::uint64_t cm, rm;
        bool operator==(const Snapshot&) const = default;
    };
    std::vector<Snapshot> seen;

    for (int round = 1; round <= round_cap; ++round) {
        const Snapshot snap{s.damaged, s.cop, s.robber, cop_mem, robber_mem};
        for (const auto& old : seen)
            if (old == snap) {
                tr.final_damaged = s.damaged;
                tr.termination = Termination::StateCycle;
                return tr;
            }
        seen.push_back(snap);

        const int cop_from = s.cop;
        const int cop_to = cop.act(g, s, cop_mem);
        StepOutcome out = step(g, s, cop_to);
        tr.moves.push_back({round, Role::Cop, cop_from, cop_to, -1});
        if (out.terminal) {
            tr.final_damaged = out.next.damaged;
            tr.termination = Termination::Capture;
            return tr;
        }
        s = out.next;
        robber.observe(g, cop_from, cop_to, robber_mem);

        const int rob_from = s.robber;
        const int rob_to = robber.act(g, s, robber_mem);
        out = step(g, s, rob_to);
        tr.moves.push_back({round, Role::Robber, rob_from, rob_to, out.newly_damaged});
        if (out.terminal) {
            tr.final_damaged = out.next.damaged;
            tr.termination = Termination::Capture;
            return tr;
        }
        s = out.next;
        cop.observe(g, rob_from, rob_to, cop_mem);
    }
    tr.final_damaged = s.damaged;
    tr.termination = Termination::RoundCap;
    return tr;
}

// ---------------------------------------------------------------------------
// Exact best response against a fixed strategy.
// ---------------------------------------------------------------------------

struct BestResponseBudget {
    std::uint64_t max_states = 100'000'000;
};

enum class BoundDirection : std::uint8_t { UpperBoundOnDamage, LowerBoundOnDamage };

struct BoundCertificate {
    std::string graph_name;
    std::string strategy_name;
    Role fixed_role = Role::Cop;
    BoundDirection direction = BoundDirection::UpperBoundOnDamage;
    int value = 0;
    bool conclusive = true;
    std::uint64_t states_explored = 0;
};

// Exact optimum for the free side against `fixed`, solved with the layered
// least-fixed-point machinery over the reachable augmented state space.
// `free_start_restriction` limits the free side's initial placements.
//
// States are packed into 64-bit keys (damaged set, positions, turn, interned
// strategy memory) held in an open-addressed table, and successors are
// recomputed during the solve instead of stored, so hundred-million-state
// explorations fit in a few gigabytes.
inline BoundCertificate best_response(const Graph& g, const Strategy& fixed, const BestResponseBudget& budget = {},
                                      Mask free_start_restriction = ~Mask{0}) {
    const bool fixed_is_cop = fixed.role() == Role::Cop;
    const int n = g.size();

    BoundCertificate cert;
    cert.graph_name = g.name();
    cert.strategy_name = fixed.name();
    cert.fixed_role = fixed.role();
    cert.direction = fixed_is_cop ? BoundDirection::UpperBoundOnDamage : BoundDirection::LowerBoundOnDamage;

    // Key layout: damaged [0,n) | cop [n,n+6) | robber [n+6,n+12) | turn | mem id.
    const int shift_cop = n;
    const int shift_rob = n + 6;
    const int shift_turn = n + 12;
    const int shift_mem = n + 13;
    if (shift_mem >= 64) throw GraphError("graph too large for best_response state packing");
    const Mask damaged_mask = n == 64 ? ~Mask{0} : (Mask{1} << n) - 1;

    // Strategy memories are interned; the named strategies use only a handful.
    std::vector<std::uint64_t> mems;
    std::unordered_map<std::uint64_t, std::uint32_t> mem_ids;
    auto mem_id = [&](std::uint64_t m) -> std::uint64_t {
        const auto [it, inserted] = mem_ids.try_emplace(m, static_cast<std::uint32_t>(mems.size()));
        if (inserted) mems.push_back(m);
        const std::uint64_t id = it->second;
        if (shift_mem + std::bit_width(id) > 64) throw BudgetError("strategy memory cardinality exceeds the packable range");
        return id;
    };
    auto pack = [&](Mask d, int c, int r, Turn t, std::uint64_t mid) -> std::uint64_t {
        return static_cast<std::uint64_t>(d) | (static_cast<std::uint64_t>(c) << shift_cop) |
               (static_cast<std::uint64_t>(r) << shift_rob) |
               (static_cast<std::uint64_t>(t == Turn::Robber ? 1 : 0) << shift_turn) | (mid << shift_mem);
    };

    // Open-addressed key table (cop bits < n < 64 keep real keys below the sentinel).
    constexpr std::uint64_t kEmpty = ~std::uint64_t{0};
    std::size_t cap = std::size_t{1} << 16;
    std::vector<std::uint64_t> slot_key(cap, kEmpty);
    std::vector<std::uint32_t> slot_id(cap);
    std::vector<std::uint64_t> key_of;  // id -> key, in discovery order
    auto probe = [](const std::vector<std::uint64_t>& tab, std::uint64_t key) -> std::size_t {
        std::uint64_t h = key * 0x9e3779b97f4a7c15ull;
        h ^= h >> 29;
        std::size_t i = static_cast<std::size_t>(h) & (tab.size() - 1);
        while (tab[i] != kEmpty && tab[i] != key) i = (i + 1) & (tab.size() - 1);
        return i;
    };
    auto intern = [&](std::uint64_t key) -> std::uint32_t {
        if ((key_of.size() + 1) * 2 > cap) {
            std::vector<std::uint64_t> nk(cap * 2, kEmpty);
            std::vector<std::uint32_t> ni(cap * 2);
            for (std::size_t i = 0; i < cap; ++i) {
                if (slot_key[i] == kEmpty) continue;
                const std::size_t j = probe(nk, slot_key[i]);
                nk[j] = slot_key[i];
                ni[j] = slot_id[i];
            }
            slot_key.swap(nk);
            slot_id.swap(ni);
            cap *= 2;
        }
        const std::size_t i = probe(slot_key, key);
        if (slot_key[i] == kEmpty) {
            slot_key[i] = key;
            slot_id[i] = static_cast<std::uint32_t>(key_of.size());
            key_of.push_back(key);
        }
        return slot_id[i];
    };
    auto lookup = [&](std::uint64_t key) -> std::uint32_t { return slot_id[probe(slot_key, key)]; };

    // Visits every successor of `key`: calls f(child_key_or_kEmpty, gain).
    auto for_each_child = [&](std::uint64_t key, auto&& f) {
        const GameState gs{key & damaged_mask, static_cast<std::uint8_t>((key >> shift_cop) & 63),
                           static_cast<std::uint8_t>((key >> shift_rob) & 63),
                           ((key >> shift_turn) & 1) ? Turn::Robber : Turn::Cop};
        const std::uint64_t mem0 = mems[static_cast<std::size_t>(key >> shift_mem)];
        const bool fixed_to_move = (gs.to_move == Turn::Cop) == fixed_is_cop;
        const int mover = gs.to_move == Turn::Cop ? gs.cop : gs.robber;
        auto act = [&](int target, std::uint64_t mem_after_act) {
            const StepOutcome so = step(g, gs, target);
            const std::uint8_t gain = so.newly_damaged >= 0 ? 1 : 0;
            if (so.terminal) {
                f(kEmpty, gain);
                return;
            }
            std::uint64_t mem = mem_after_act;
            if (!fixed_to_move) fixed.observe(g, mover, target, mem);
            f(pack(so.next.damaged, so.next.cop, so.next.robber, so.next.to_move, mem_id(mem)), gain);
        };
        if (fixed_to_move) {
            std::uint64_t mem = mem0;
            const int target = fixed.act(g, gs, mem);  // act mutates mem; sequence before stepping
            act(target, mem);
        } else {
            for (Mask tm = g.closed(mover); tm;) {
                const int target = std::countr_zero(tm);
                tm &= tm - 1;
                act(target, mem0);
            }
        }
    };

    // Roots.
    std::vector<std::uint32_t> roots;
    if (fixed_is_cop) {
        std::uint64_t mem0 = 0;
        const int cop0 = fixed.place(g, std::nullopt, mem0);
        for (int r = 0; r < n; ++r) {
            if (r == cop0 || (free_start_restriction & vbit(r)) == 0) continue;
            roots.push_back(intern(pack(0, cop0, r, Turn::Cop, mem_id(mem0))));
        }
    } else {
        for (int c = 0; c < n; ++c) {
            if ((free_start_restriction & vbit(c)) == 0) continue;
            std::uint64_t mem0 = 0;
            const int r0 = fixed.place(g, c, mem0);
            if (r0 == c) continue;  // placed onto the cop: captured, value 0
            roots.push_back(intern(pack(0, c, r0, Turn::Cop, mem_id(mem0))));
        }
    }

    // Forward exploration.
    for (std::size_t next = 0; next < key_of.size(); ++next) {
        if (key_of.size() > budget.max_states) {
            cert.conclusive = false;
            cert.states_explored = key_of.size();
            return cert;
        }
        for_each_child(key_of[next], [&](std::uint64_t child, std::uint8_t) {
            if (child != kEmpty) intern(child);
        });
    }
    cert.states_explored = key_of.size();

    // Layered least-fixed-point solve, decreasing damaged-set size.
    const std::size_t total = key_of.size();
    std::vector<std::uint32_t> order(total);
    {
        std::vector<std::size_t> start(static_cast<std::size_t>(n) + 2, 0);
        for (const std::uint64_t key : key_of) ++start[static_cast<std::size_t>(n - std::popcount(key & damaged_mask))];
        std::size_t acc = 0;
        for (std::size_t l = 0; l <= static_cast<std::size_t>(n) + 1; ++l) {
            const std::size_t c = start[l];
            start[l] = acc;
            acc += c;
        }
        std::vector<std::size_t> cursor = start;
        for (std::uint32_t i = 0; i < total; ++i)
            order[cursor[static_cast<std::size_t>(n - std::popcount(key_of[i] & damaged_mask))]++] = i;
        // `order` now lists states from most-damaged layers to least-damaged;
        // sweep each layer to its fixpoint before moving up.
        std::vector<std::uint8_t> value(total, 0);
        std::size_t lo = 0;
        for (int layer = n; layer >= 0; --layer) {
            const std::size_t hi = start[static_cast<std::size_t>(n - layer) + 1];
            bool changed = true;
            while (changed) {
                changed = false;
                for (std::size_t k = lo; k < hi; ++k) {
                    const std::uint32_t i = order[k];
                    const bool maximize = (key_of[i] >> shift_turn) & 1;
                    int best = maximize ? 0 : std::numeric_limits<int>::max();
                    for_each_child(key_of[i], [&](std::uint64_t child, std::uint8_t gain) {
                        const int v = gain + (child == kEmpty ? 0 : value[lookup(child)]);
                        best = maximize ? std::max(best, v) : std::min(best, v);
                    });
                    if (best != std::numeric_limits<int>::max() && best > value[i]) {
                        value[i] = static_cast<std::uint8_t>(best);
                        changed = true;
                    }
                }
            }
            lo = hi;
        }

        int result = fixed_is_cop ? 0 : std::numeric_limits<int>::max();
        for (const std::uint32_t r : roots) result = fixed_is_cop ? std::max(result, static_cast<int>(value[r])) : std::min(result, static_cast<int>(value[r]));
        if (roots.empty()) result = 0;
        cert.value = result;
    }
    return cert;
}

}  // namespace damage
