#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fdsched/scenario.hpp"

namespace fdsched {

// How two distinct flows f, l relate through their endpoints.
enum class PairKind {
    SameTx,        // t_f == t_l
    SameRx,        // r_f == r_l
    RsiOneWay,     // exactly one of t_f == r_l, t_l == r_f
    RsiBothWays,   // t_f == r_l and t_l == r_f
    NoCommonNode,
};

const char* to_string(PairKind kind);

// Role conflicts are checked first, so (A->B),(A->B) is SameTx.
PairKind classify_pair(const Flow& f, const Flow& l);

inline bool is_role_conflict(PairKind k) { return k == PairKind::SameTx || k == PairKind::SameRx; }

struct RelativeInterference {
    double f_to_l = 0.0;  // RI_{f,l}: what f does to l, relative to l's signal
    double l_to_f = 0.0;  // RI_{l,f}

    double max() const { return f_to_l > l_to_f ? f_to_l : l_to_f; }
};

// RSI directions use (N0W + beta N0W) / P_signal; MUI directions use
// (N0W + rho P_cross) / P_signal. Throws ContractViolation for role conflicts.
RelativeInterference relative_interference(int f, int l, PairKind kind, const Scenario& scenario);

enum class EdgeCause : std::uint8_t { None = 0, RoleConflict = 1, RiExceeded = 2 };

const char* to_string(EdgeCause cause);

class ContentionGraph {
public:
    ContentionGraph() = default;
    explicit ContentionGraph(int num_flows);

    int num_flows() const { return n_; }

    void add_edge(int a, int b, EdgeCause cause);
    bool has_edge(int a, int b) const { return cause(a, b) != EdgeCause::None; }
    EdgeCause cause(int a, int b) const { return cells_[index(a, b)]; }

    int degree(int v) const;
    std::vector<int> neighbors(int v) const;
    std::size_t edge_count() const;

    struct Edge {
        int a;
        int b;
        EdgeCause cause;
    };
    // Edges with a < b, lexicographic.
    std::vector<Edge> edges() const;

    friend bool operator==(const ContentionGraph&, const ContentionGraph&) = default;

private:
    std::size_t index(int a, int b) const {
        return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b);
    }

    int n_ = 0;
    std::vector<EdgeCause> cells_;
};

// Full-duplex graph: edge on SameTx/SameRx, or when max RI exceeds sigma.
ContentionGraph build_graph(const Scenario& scenario);
// Half-duplex graph: any shared station is a role conflict; RI edges from the MUI test only.
ContentionGraph hd_graph(const Scenario& scenario);

// One "a b cause" line per edge.
std::string dump_edges(const ContentionGraph& graph);

}  // namespace fdsched
