#include "fdsched/contention.hpp"

#include <sstream>

#include "fdsched/errors.hpp"
#include "fdsched/rates.hpp"

namespace fdsched {

const char* to_string(PairKind kind) {
    switch (kind) {
        case PairKind::SameTx: return "same-tx";
        case PairKind::SameRx: return "same-rx";
        case PairKind::RsiOneWay: return "rsi-one-way";
        case PairKind::RsiBothWays: return "rsi-both-ways";
        case PairKind::NoCommonNode: return "no-common-node";
    }
    return "?";
}

const char* to_string(EdgeCause cause) {
    switch (cause) {
        case EdgeCause::None: return "none";
        case EdgeCause::RoleConflict: return "role-conflict";
        case EdgeCause::RiExceeded: return "ri-exceeded";
    }
    return "?";
}

PairKind classify_pair(const Flow& f, const Flow& l) {
    if (f.tx == l.tx) return PairKind::SameTx;
    if (f.rx == l.rx) return PairKind::SameRx;
    const bool f_feeds_l = f.tx == l.rx;
    const bool l_feeds_f = l.tx == f.rx;
    if (f_feeds_l && l_feeds_f) return PairKind::RsiBothWays;
    if (f_feeds_l || l_feeds_f) return PairKind::RsiOneWay;
    return PairKind::NoCommonNode;
}

namespace {

// Powers come from `Src` so the scenario path and the cached graph path share one formula.
template <typename Src>
RelativeInterference compute_ri(int f, int l, PairKind kind, const Scenario& s, const Src& src) {
    const double noise = noise_power(s.constants);
    const auto beta = [&s](int station) { return s.stations[static_cast<std::size_t>(station)].si_cancel; };
    const Flow& ff = s.flows[static_cast<std::size_t>(f)];
    const Flow& fl = s.flows[static_cast<std::size_t>(l)];

    // Victim suffers RSI from the aggressor transmitting at the victim's receiver.
    const auto rsi = [&](int aggressor_tx, int victim) {
        return (noise + beta(aggressor_tx) * noise) / src.signal(victim);
    };
    const auto mui = [&](int aggressor, int victim) {
        return (noise + src.interference(aggressor, victim)) / src.signal(victim);
    };

    switch (kind) {
        case PairKind::RsiBothWays:
            return {rsi(ff.tx, l), rsi(fl.tx, f)};
        case PairKind::RsiOneWay:
            if (ff.tx == fl.rx) return {rsi(ff.tx, l), mui(l, f)};
            return {mui(f, l), rsi(fl.tx, f)};
        case PairKind::NoCommonNode:
            return {mui(f, l), mui(l, f)};
        case PairKind::SameTx:
        case PairKind::SameRx:
            break;
    }
    throw ContractViolation("relative interference is undefined for role-conflicting flows");
}

struct ScenarioPowers {
    const Scenario& s;
    double signal(int f) const { return signal_power(s, f); }
    double interference(int l, int f) const { return interference_power(s, l, f); }
};

bool shares_station(const Flow& a, const Flow& b) {
    return a.tx == b.tx || a.tx == b.rx || a.rx == b.tx || a.rx == b.rx;
}

}  // namespace

RelativeInterference relative_interference(int f, int l, PairKind kind, const Scenario& s) {
    if (f == l) throw ContractViolation("relative_interference: a flow with itself");
    if (f < 0 || l < 0 || f >= s.num_flows() || l >= s.num_flows())
        throw ContractViolation("relative_interference: unknown flow id");
    return compute_ri(f, l, kind, s, ScenarioPowers{s});
}

ContentionGraph::ContentionGraph(int num_flows)
    : n_(num_flows), cells_(static_cast<std::size_t>(num_flows) * static_cast<std::size_t>(num_flows), EdgeCause::None) {}

void ContentionGraph::add_edge(int a, int b, EdgeCause cause) {
    if (a == b) throw ContractViolation("contention graph: self-loop");
    if (a < 0 || b < 0 || a >= n_ || b >= n_) throw ContractViolation("contention graph: vertex out of range");
    cells_[index(a, b)] = cause;
    cells_[index(b, a)] = cause;
}

int ContentionGraph::degree(int v) const {
    int d = 0;
    for (int u = 0; u < n_; ++u) d += has_edge(v, u) ? 1 : 0;
    return d;
}

std::vector<int> ContentionGraph::neighbors(int v) const {
    std::vector<int> out;
    for (int u = 0; u < n_; ++u) {
        if (has_edge(v, u)) out.push_back(u);
    }
    return out;
}

std::size_t ContentionGraph::edge_count() const {
    std::size_t count = 0;
    for (auto c : cells_) count += c != EdgeCause::None ? 1 : 0;
    return count / 2;
}

std::vector<ContentionGraph::Edge> ContentionGraph::edges() const {
    std::vector<Edge> out;
    for (int a = 0; a < n_; ++a) {
        for (int b = a + 1; b < n_; ++b) {
            if (has_edge(a, b)) out.push_back({a, b, cause(a, b)});
        }
    }
    return out;
}

ContentionGraph build_graph(const Scenario& s) {
    const LinkBudget budget(s);
    ContentionGraph g(s.num_flows());
    for (int f = 0; f < s.num_flows(); ++f) {
        for (int l = f + 1; l < s.num_flows(); ++l) {
            const PairKind kind = classify_pair(s.flows[static_cast<std::size_t>(f)], s.flows[static_cast<std::size_t>(l)]);
            if (is_role_conflict(kind)) {
                g.add_edge(f, l, EdgeCause::RoleConflict);
            } else if (compute_ri(f, l, kind, s, budget).max() > s.contention_threshold) {
                g.add_edge(f, l, EdgeCause::RiExceeded);
            }
        }
    }
    return g;
}

ContentionGraph hd_graph(const Scenario& s) {
    const LinkBudget budget(s);
    ContentionGraph g(s.num_flows());
    for (int f = 0; f < s.num_flows(); ++f) {
        for (int l = f + 1; l < s.num_flows(); ++l) {
            const Flow& ff = s.flows[static_cast<std::size_t>(f)];
            const Flow& fl = s.flows[static_cast<std::size_t>(l)];
            if (shares_station(ff, fl)) {
                g.add_edge(f, l, EdgeCause::RoleConflict);
            } else if (compute_ri(f, l, PairKind::NoCommonNode, s, budget).max() > s.contention_threshold) {
                g.add_edge(f, l, EdgeCause::RiExceeded);
            }
        }
    }
    return g;
}

std::string dump_edges(const ContentionGraph& graph) {
    std::ostringstream out;
    for (const auto& e : graph.edges()) out << e.a << ' ' << e.b << ' ' << to_string(e.cause) << '\n';
    return out.str();
}

}  // namespace fdsched
