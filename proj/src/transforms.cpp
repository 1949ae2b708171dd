#include "minorkit/transforms.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

namespace minorkit {

namespace {

std::string join_messages(const std::vector<std::string>& msgs) {
    std::ostringstream os;
    for (std::size_t i = 0; i < msgs.size(); ++i) {
        if (i) os << "; ";
        os << msgs[i];
    }
    return os.str();
}

void check_valid(const MinorModel& m, const char* where) {
    auto msgs = validate_model(m);
    if (!msgs.empty())
        throw std::logic_error(std::string("internal error in ") + where + ": " + join_messages(msgs));
}

// Four representative outer-cycle columns for a host block, chosen so that
// for a transaction block the host edges (a1,a3) and (a2,a4) exist directly.
std::array<int, 4> aligned_anchor_cols(int m, int block, std::optional<TransactionKind> kind) {
    const int o = 4 * m * (block - 1);
    if (!kind) return {o + 1, o + m + 1, o + 2 * m + 1, o + 3 * m + 1};
    if (*kind == TransactionKind::crosscap) return {o + 1, o + 2, o + 2 * m + 1, o + 2 * m + 2};
    return {o + 1, o + m + 1, o + 3 * m, o + 4 * m};
}

std::optional<TransactionKind> host_block_kind(const LabeledGrid& host, int block) {
    if (block == 1) return std::nullopt;
    return host.transactions.at(static_cast<std::size_t>(block) - 2).kind;
}

const char* kind_name(std::optional<TransactionKind> k) {
    if (!k) return "annulus";
    return *k == TransactionKind::handle ? "handle" : "crosscap";
}

// Aligned construction: every order-1 pattern vertex is represented by a
// contiguous outer-cycle arc of the host; consecutive anchors delimit the
// arcs and the transaction chords are direct host edges between arc heads.
RoutedModel build_aligned(const LabeledGrid& host, const LabeledGrid& pattern,
                          const std::vector<int>& host_block_of, std::vector<std::string> log) {
    const int m = host.cycles;
    const int n_host = host.cycle_length;
    const int n_pat = pattern.cycle_length;
    const int blocks_pat = n_pat / 4;

    std::vector<int> anchors;  // outer-cycle columns, one per pattern vertex
    anchors.reserve(static_cast<std::size_t>(n_pat));
    for (int pb = 1; pb <= blocks_pat; ++pb) {
        const int hb = host_block_of.at(static_cast<std::size_t>(pb) - 1);
        const auto kind = host_block_kind(host, hb);
        for (int col : aligned_anchor_cols(m, hb, kind)) anchors.push_back(col);
        std::ostringstream os;
        os << "block " << pb << " -> host block " << hb << " (" << kind_name(kind) << ")";
        log.push_back(os.str());
    }
    if (anchors.front() != 1) throw std::logic_error("aligned construction: first anchor must be column 1");
    for (std::size_t i = 1; i < anchors.size(); ++i)
        if (anchors[i] <= anchors[i - 1]) throw std::logic_error("aligned construction: anchors not increasing");

    MinorModel model;
    model.pattern = pattern.graph;
    model.host = host.graph;
    for (int c = 1; c <= n_pat; ++c) {
        const int lo = anchors[static_cast<std::size_t>(c) - 1];
        const int hi = (c < n_pat) ? anchors[static_cast<std::size_t>(c)] - 1 : n_host;
        VertexSet arc;
        for (int col = lo; col <= hi; ++col) arc.insert(host.vertex_at(1, col));
        model.branch_sets[pattern.vertex_at(1, c)] = std::move(arc);
    }
    check_valid(model, "aligned construction");
    return RoutedModel{std::move(model), std::move(log)};
}

int checked_small_order(int host_order, int factor, const char* label) {
    if (host_order <= 0 || host_order % factor != 0)
        throw DomainError(std::string("order must be ") + label);
    const int k = host_order / factor;
    if (k > 1)
        throw BudgetError("only order " + std::to_string(factor) +
                          " (k = 1) is materialized; larger orders are tracked symbolically");
    return k;
}

std::string mul_decimal(const std::string& s, unsigned long long f) {
    std::string out;
    unsigned long long carry = 0;
    for (auto it = s.rbegin(); it != s.rend(); ++it) {
        const unsigned long long v = static_cast<unsigned long long>(*it - '0') * f + carry;
        out.push_back(static_cast<char>('0' + v % 10));
        carry = v / 10;
    }
    while (carry != 0) {
        out.push_back(static_cast<char>('0' + carry % 10));
        carry /= 10;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace

int PackingCertificate::max_multiplicity() const {
    int best = 0;
    for (const auto& [v, k] : multiplicity) best = std::max(best, k);
    return best;
}

unsigned long long OrderBudget::plan_factor_product() const {
    unsigned long long p = 1;
    constexpr auto cap = std::numeric_limits<unsigned long long>::max();
    for (const auto& s : step_plan) {
        const auto f = static_cast<unsigned long long>(s.factor);
        if (f != 0 && p > cap / f) return cap;
        p *= f;
    }
    return p;
}

RoutedModel swap_adjacent(int host_order, const std::vector<TransactionKind>& kinds, int position) {
    checked_small_order(host_order, 9, "9k");
    const int blocks = static_cast<int>(kinds.size()) + 1;
    if (position < 2 || position + 1 > blocks)
        throw DomainError("swap position out of range");
    const TransactionKind a = kinds[static_cast<std::size_t>(position) - 2];
    const TransactionKind b = kinds[static_cast<std::size_t>(position) - 1];
    if (a == b) throw DomainError("swap requires adjacent transactions of different kinds");

    std::vector<TransactionKind> swapped = kinds;
    std::swap(swapped[static_cast<std::size_t>(position) - 2],
              swapped[static_cast<std::size_t>(position) - 1]);

    const LabeledGrid host = mixed_surface_grid(9, kinds);
    const LabeledGrid pattern = mixed_surface_grid(1, swapped);
    std::vector<int> block_map(static_cast<std::size_t>(blocks));
    for (int pb = 1; pb <= blocks; ++pb) block_map[static_cast<std::size_t>(pb) - 1] = pb;

    std::vector<std::string> log;
    log.push_back("swap " + std::string(kind_name(a)) + "/" + kind_name(b) + " at positions " +
                  std::to_string(position) + "," + std::to_string(position + 1) +
                  " inside an order-9 host");
    return build_aligned(host, pattern, block_map, std::move(log));
}

RoutedModel crosscaps_to_handle(int host_order, const std::vector<TransactionKind>& kinds, int position) {
    checked_small_order(host_order, 18, "18k");
    const int blocks = static_cast<int>(kinds.size()) + 1;
    if (position < 2 || position + 2 > blocks)
        throw DomainError("conversion position out of range");
    for (int p = position; p <= position + 2; ++p)
        if (kinds[static_cast<std::size_t>(p) - 2] != TransactionKind::crosscap)
            throw DomainError("conversion requires three consecutive crosscaps");

    std::vector<TransactionKind> converted = kinds;
    converted.erase(converted.begin() + (position - 2), converted.begin() + (position + 1));
    converted.insert(converted.begin() + (position - 2),
                     {TransactionKind::handle, TransactionKind::crosscap});

    const LabeledGrid host = mixed_surface_grid(18, kinds);
    const LabeledGrid pattern = mixed_surface_grid(1, converted);
    const int blocks_pat = blocks - 1;
    std::vector<int> block_map(static_cast<std::size_t>(blocks_pat));
    for (int pb = 1; pb <= blocks_pat; ++pb)
        block_map[static_cast<std::size_t>(pb) - 1] = (pb <= position + 1) ? pb : pb + 1;

    std::vector<std::string> log;
    log.push_back("three crosscaps at positions " + std::to_string(position) + ".." +
                  std::to_string(position + 2) + " become handle+crosscap; host block " +
                  std::to_string(position + 2) + " is absorbed by the preceding arc");
    return build_aligned(host, pattern, block_map, std::move(log));
}

RoutedModel handle_to_crosscaps(int host_order, const std::vector<TransactionKind>& kinds, int position) {
    checked_small_order(host_order, 18, "18k");
    const int m = 18;
    const int blocks = static_cast<int>(kinds.size()) + 1;
    if (position < 2 || position + 1 > blocks)
        throw DomainError("conversion position out of range");
    if (kinds[static_cast<std::size_t>(position) - 2] != TransactionKind::handle ||
        kinds[static_cast<std::size_t>(position) - 1] != TransactionKind::crosscap)
        throw DomainError("conversion requires a handle followed by a crosscap");

    std::vector<TransactionKind> converted = kinds;
    converted.erase(converted.begin() + (position - 2), converted.begin() + position);
    converted.insert(converted.begin() + (position - 2), 3, TransactionKind::crosscap);

    const LabeledGrid host = mixed_surface_grid(m, kinds);
    const LabeledGrid pattern = mixed_surface_grid(1, converted);
    const int blocks_pat = blocks + 1;

    std::vector<std::string> log;
    log.push_back("handle+crosscap at positions " + std::to_string(position) + "," +
                  std::to_string(position + 1) + " become three crosscaps");

    // All three produced crosscap blocks live inside the single host crosscap
    // fabric.  Each fabric vertex is a teleport pair {entry, exit} on the outer
    // cycle, so its two chords are host transaction edges, and consecutive
    // entry columns give the cycle edges directly.  Chords between pairs are
    // realised by short second-row hooks; the host handle block carries no
    // vertices and is crossed by a plain outer-cycle corridor.
    const int occ = 4 * m * position;  // column offset of the host crosscap block
    const int n_cols = host.cycle_length;
    const int n_pat = pattern.cycle_length;

    MinorModel model;
    model.pattern = pattern.graph;
    model.host = host.graph;

    // in/out boundary columns on the host outer cycle, one per pattern vertex
    std::vector<int> in_col(static_cast<std::size_t>(n_pat) + 1, 0);
    std::vector<int> out_col(static_cast<std::size_t>(n_pat) + 1, 0);

    for (int pb = 1; pb <= blocks_pat; ++pb) {
        if (pb >= position && pb <= position + 2) {
            const int w0 = 4 * (pb - position);
            for (int i = 1; i <= 4; ++i) {
                const int c = 4 * (pb - 1) + i;
                const int pv = pattern.vertex_at(1, c);
                const int entry = occ + w0 + i;
                const int exit = occ + 2 * m + w0 + i;
                model.branch_sets[pv] = {host.vertex_at(1, entry), host.vertex_at(1, exit)};
                in_col[static_cast<std::size_t>(c)] = entry;
                out_col[static_cast<std::size_t>(c)] = entry;
            }
            // chords (v1,v3) and (v2,v4) of this block via disjoint row-2 hooks
            const int v1 = pattern.vertex_at(1, 4 * (pb - 1) + 1);
            const int v2 = pattern.vertex_at(1, 4 * (pb - 1) + 2);
            for (int d = 1; d <= 3; ++d)
                model.branch_sets[v1].insert(host.vertex_at(2, occ + w0 + d));
            for (int d = 2; d <= 4; ++d)
                model.branch_sets[v2].insert(host.vertex_at(2, occ + 2 * m + w0 + d));
            log.push_back("block " + std::to_string(pb) + " -> teleport pairs " +
                          std::to_string(w0 + 1) + ".." + std::to_string(w0 + 4) +
                          " of the host crosscap fabric");
        } else {
            const int hb = (pb < position) ? pb : pb - 1;
            const auto kind = host_block_kind(host, hb);
            const auto cols = aligned_anchor_cols(m, hb, kind);
            for (int i = 1; i <= 4; ++i) {
                const int c = 4 * (pb - 1) + i;
                const int pv = pattern.vertex_at(1, c);
                model.branch_sets[pv] = {host.vertex_at(1, cols[static_cast<std::size_t>(i) - 1])};
                in_col[static_cast<std::size_t>(c)] = cols[static_cast<std::size_t>(i) - 1];
                out_col[static_cast<std::size_t>(c)] = cols[static_cast<std::size_t>(i) - 1];
            }
            log.push_back("block " + std::to_string(pb) + " -> host block " + std::to_string(hb) +
                          " (" + kind_name(kind) + ")");
        }
    }
    // the last fabric vertex leaves the fabric through its teleport exit
    out_col[static_cast<std::size_t>(4 * (position + 2))] = occ + 2 * m + 12;

    // outer-cycle corridors between consecutive boundary columns (claimed by
    // the earlier vertex); a gap of one column is already a direct host edge
    for (int c = 1; c <= n_pat; ++c) {
        const int a = out_col[static_cast<std::size_t>(c)];
        const int b = (c < n_pat) ? in_col[static_cast<std::size_t>(c) + 1] : n_cols + 1;
        const int pv = pattern.vertex_at(1, c);
        for (int col = a + 1; col <= b - 1; ++col)
            model.branch_sets[pv].insert(host.vertex_at(1, col));
    }

    check_valid(model, "handle_to_crosscaps");
    return RoutedModel{std::move(model), std::move(log)};
}

OrderBudget plan_to_dyck(int handles, int crosscaps, int order) {
    if (handles < 0 || crosscaps < 0 || order < 1)
        throw DomainError("plan_to_dyck: handles, crosscaps must be >= 0 and order >= 1");
    OrderBudget budget;
    budget.genus = 2 * handles + crosscaps;
    budget.target_order = order;

    const int conversions =
        (crosscaps <= 2) ? 0 : (crosscaps % 2 == 1 ? (crosscaps - 1) / 2 : (crosscaps - 2) / 2);
    for (int j = 1; j <= conversions; ++j) {
        for (int s = 0; s < handles + j - 1; ++s)
            budget.step_plan.push_back(PlanStep{"swap_adjacent", 9});
        budget.step_plan.push_back(PlanStep{"crosscaps_to_handle", 18});
    }

    std::string required = "1";
    for (int i = 0; i < 2 * budget.genus; ++i) required = mul_decimal(required, 162);
    budget.required_order = mul_decimal(required, static_cast<unsigned long long>(order));
    return budget;
}

std::pair<RoutedModel, RoutedModel> annulus_embed(int handles, int crosscaps, int order) {
    if (handles < 0 || crosscaps < 0 || order < 1)
        throw DomainError("annulus_embed: handles, crosscaps must be >= 0 and order >= 1");
    if (handles == 0 && crosscaps == 0)
        throw DomainError("annulus_embed: at least one transaction is required");
    if (crosscaps > 2) throw DomainError("annulus_embed: at most two crosscaps (normal form)");
    const int k = order;

    // Direction one: the annulus-free grid inside the full grid, same order.
    RoutedModel forward;
    {
        const LabeledGrid pattern = dtilde(handles, crosscaps, k);
        const LabeledGrid host = dyck_grid(handles, crosscaps, k);
        const int n_pat = pattern.cycle_length;  // 4(h+c)k
        MinorModel model;
        model.pattern = pattern.graph;
        model.host = host.graph;
        for (int r = 1; r <= k; ++r) {
            for (int t = 1; t <= n_pat; ++t) {
                VertexSet bs{host.vertex_at(r, 4 * k + t)};
                if (t == n_pat)
                    for (int j = 1; j <= 4 * k; ++j) bs.insert(host.vertex_at(r, j));
                model.branch_sets[pattern.vertex_at(r, t)] = std::move(bs);
            }
        }
        check_valid(model, "annulus_embed (annulus-free in full)");
        forward.model = std::move(model);
        forward.step_log.push_back(
            "shift every column by 4k; the last column additionally absorbs the annulus block");
    }

    // Direction two: the full grid of order k inside the annulus-free grid
    // of order 2k.  The annulus block is simulated inside the free border
    // columns and the lower half of the rows.
    RoutedModel backward;
    {
        const LabeledGrid pattern = dyck_grid(handles, crosscaps, k);
        const LabeledGrid host = dtilde(handles, crosscaps, 2 * k);
        const int n_pat = pattern.cycle_length;       // 4(h+c+1)k
        const int n_host = host.cycle_length;         // 8(h+c)k

        // Pattern transaction column -> host column carrying the same chord.
        auto phi = [&](int c) {
            const int q = (c - 1) / (4 * k);  // host block index, 1-based
            const int t = c - 4 * k * q;
            const TransactionKind kd = host.transactions.at(static_cast<std::size_t>(q) - 1).kind;
            int f;
            if (kd == TransactionKind::crosscap)
                f = (t <= 2 * k) ? k + t : 3 * k + t;
            else
                f = (t <= k) ? k + t : (t <= 3 * k ? 2 * k + t : 3 * k + t);
            return 8 * k * (q - 1) + f;
        };

        MinorModel model;
        model.pattern = pattern.graph;
        model.host = host.graph;
        for (int r = 1; r <= k; ++r) {
            // Transaction region: upper-half rows, contiguous column arcs.
            for (int c = 4 * k + 1; c <= n_pat; ++c) {
                VertexSet bs;
                const int lo = phi(c);
                const int hi = (c < n_pat) ? phi(c + 1) - 1 : lo;
                for (int col = lo; col <= hi; ++col) bs.insert(host.vertex_at(r, col));
                model.branch_sets[pattern.vertex_at(r, c)] = std::move(bs);
            }
            // Annulus block: lower-half band rows plus free border columns.
            const int band = 2 * k - r + 1;
            for (int j = 1; j <= 4 * k; ++j) {
                VertexSet bs;
                if (j == 1) {
                    bs.insert(host.vertex_at(band, 6 * k));
                    for (int col = phi(n_pat) + 1; col <= n_host - r + 1; ++col)
                        bs.insert(host.vertex_at(r, col));
                    for (int row = r + 1; row <= 2 * k - r; ++row)
                        bs.insert(host.vertex_at(row, n_host - r + 1));
                    for (int col = 6 * k + 1; col <= n_host - r + 1; ++col)
                        bs.insert(host.vertex_at(band, col));
                } else if (j == 4 * k) {
                    bs.insert(host.vertex_at(band, 2 * k + 1));
                    for (int col = r; col <= 2 * k; ++col) bs.insert(host.vertex_at(band, col));
                    for (int row = r + 1; row <= 2 * k - r; ++row) bs.insert(host.vertex_at(row, r));
                    for (int col = r; col <= k; ++col) bs.insert(host.vertex_at(r, col));
                } else {
                    bs.insert(host.vertex_at(band, 6 * k - j + 1));
                }
                model.branch_sets[pattern.vertex_at(r, j)] = std::move(bs);
            }
        }
        check_valid(model, "annulus_embed (full in annulus-free, doubled order)");
        backward.model = std::move(model);
        backward.step_log.push_back(
            "double the order; the annulus cycle is simulated in the lower row band and the free "
            "border columns");
    }
    return {std::move(forward), std::move(backward)};
}

PackingCertificate half_integral_packing(int handles, int crosscaps, int copies, int order) {
    if (handles < 0 || crosscaps < 0)
        throw DomainError("half_integral_packing: handles, crosscaps must be >= 0");
    if (handles == 0 && crosscaps == 0)
        throw DomainError("half_integral_packing: at least one transaction is required");
    if (copies < 1 || order < 1)
        throw DomainError("half_integral_packing: copies and order must be >= 1");
    const int x = copies, y = order;

    const LabeledGrid pattern = dtilde(handles, crosscaps, y);
    const LabeledGrid host = dtilde(handles, crosscaps, x * y);
    const int n_pat = pattern.cycle_length;  // 4(h+c)y

    PackingCertificate cert;
    for (int t = 1; t <= x; ++t) {
        const int base = (t - 1) * y;
        MinorModel model;
        model.pattern = pattern.graph;
        model.host = host.graph;
        for (int r = 1; r <= y; ++r)
            for (int col = 1; col <= n_pat; ++col) {
                VertexSet bs;
                for (int hc = x * (col - 1) + 1; hc <= x * col; ++hc)
                    bs.insert(host.vertex_at(base + r, hc));
                model.branch_sets[pattern.vertex_at(r, col)] = std::move(bs);
            }
        // Each pattern transaction edge is simulated by the host edge with
        // the matching path index; vertical portal columns connect the host
        // edge endpoints (always on cycle 1) down to the copy's row band.
        for (std::size_t q = 0; q < pattern.transactions.size(); ++q) {
            const auto& pr = pattern.transactions[q];
            const auto& hr = host.transactions[q];
            const int npaths = static_cast<int>(pr.paths.size());
            for (int s = 1; s <= npaths; ++s) {
                int sprime;
                if (pr.kind == TransactionKind::crosscap || s <= y)
                    sprime = x * (s - 1) + t;
                else
                    sprime = x * y + x * (s - y - 1) + t;
                const auto& ppath = pr.paths[static_cast<std::size_t>(s) - 1];
                const auto& hpath = hr.paths[static_cast<std::size_t>(sprime) - 1];
                for (int hv : {hpath.front(), hpath.back()}) {
                    const int hcol = host.coord.at(hv).second;
                    int pv = -1;
                    for (int pend : {ppath.front(), ppath.back()}) {
                        const int pcol = pattern.coord.at(pend).second;
                        if (hcol >= x * (pcol - 1) + 1 && hcol <= x * pcol) pv = pend;
                    }
                    if (pv < 0)
                        throw std::logic_error("half_integral_packing: portal column out of range");
                    for (int row = 1; row <= base; ++row)
                        model.branch_sets[pv].insert(host.vertex_at(row, hcol));
                }
            }
        }
        check_valid(model, "half_integral_packing");
        for (const auto& [pv, bs] : model.branch_sets)
            for (int hv : bs) ++cert.multiplicity[hv];
        cert.copies.push_back(std::move(model));
    }
    if (cert.max_multiplicity() > 2)
        throw std::logic_error("half_integral_packing: multiplicity bound violated");
    return cert;
}

}  // namespace minorkit
