#include "justinf/bratteli.hpp"

#include <algorithm>
#include <sstream>

#include "justinf/errors.hpp"

namespace justinf::bratteli {

namespace {

void check_depth_arg(int depth) {
  if (depth < 1) throw DomainError("diagram depth must be >= 1");
  if (depth > 64) throw ResourceError("diagram depth capped at 64");
}

std::vector<std::set<int>> complement_sets(const BratteliDiagram& d,
                                           const std::vector<std::set<int>>& members) {
  std::vector<std::set<int>> out(d.dims.size());
  for (std::size_t i = 0; i < d.dims.size(); ++i) {
    for (int p = 0; p < static_cast<int>(d.dims[i].size()); ++p) {
      if (!members[i].contains(p)) out[i].insert(p);
    }
  }
  return out;
}

void require_same_shape(const BratteliDiagram& d, const std::vector<std::set<int>>& members) {
  if (members.size() != d.dims.size()) {
    throw DomainError("ideal has a different number of levels than the diagram");
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (int p : members[i]) {
      if (p < 0 || p >= static_cast<int>(d.dims[i].size())) {
        throw DomainError("ideal names a vertex outside the diagram");
      }
    }
  }
}

}  // namespace

long long BratteliDiagram::level_dimension(int level) const {
  if (level < 1 || level > depth()) throw DomainError("level out of range");
  long long sum = 0;
  for (long long k : dims[static_cast<std::size_t>(level - 1)]) sum += k * k;
  return sum;
}

void BratteliDiagram::validate() const {
  if (edges.size() + 1 != dims.size() && !(dims.empty() && edges.empty())) {
    throw DomainError("diagram needs one edge layer between consecutive levels");
  }
  if (!labels.empty() && labels.size() != dims.size()) {
    throw DomainError("label layers do not match levels");
  }
  for (std::size_t i = 0; i < dims.size(); ++i) {
    for (long long k : dims[i]) {
      if (k < 1) throw DomainError("vertex dimensions must be >= 1");
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto n_from = static_cast<int>(dims[i].size());
    const auto n_to = static_cast<int>(dims[i + 1].size());
    std::vector<long long> incoming(static_cast<std::size_t>(n_to), 0);
    std::vector<int> outgoing(static_cast<std::size_t>(n_from), 0);
    for (const Edge& e : edges[i]) {
      if (e.from < 0 || e.from >= n_from || e.to < 0 || e.to >= n_to) {
        throw DomainError("edge endpoint out of range at level " + std::to_string(i + 1));
      }
      if (e.mult < 1) throw DomainError("edge multiplicities must be >= 1");
      incoming[static_cast<std::size_t>(e.to)] += e.mult * dims[i][static_cast<std::size_t>(e.from)];
      outgoing[static_cast<std::size_t>(e.from)] += 1;
    }
    for (int p = 0; p < n_to; ++p) {
      if (incoming[static_cast<std::size_t>(p)] == 0) {
        throw DomainError("dead vertex (no incoming edge) at level " + std::to_string(i + 2));
      }
      if (incoming[static_cast<std::size_t>(p)] != dims[i + 1][static_cast<std::size_t>(p)]) {
        throw DomainError("dimension compatibility fails at level " + std::to_string(i + 2) +
                          " vertex " + std::to_string(p));
      }
    }
    for (int p = 0; p < n_from; ++p) {
      if (outgoing[static_cast<std::size_t>(p)] == 0) {
        throw DomainError("dead vertex (no outgoing edge) at level " + std::to_string(i + 1));
      }
    }
  }
}

bool DiagramIdeal::empty() const {
  for (const auto& level : members) {
    if (!level.empty()) return false;
  }
  return true;
}

std::size_t DiagramIdeal::vertex_count() const {
  std::size_t n = 0;
  for (const auto& level : members) n += level.size();
  return n;
}

BratteliDiagram build_y_infty(int depth) {
  check_depth_arg(depth);
  BratteliDiagram d;
  d.rule = "y_infty";
  d.monotone_growth = true;
  d.dims.push_back({1});
  d.labels.push_back({"1"});
  for (int n = 1; n < depth; ++n) {
    // level n has n vertices; the new vertex collects one edge from each
    const auto& prev = d.dims.back();
    std::vector<Edge> layer;
    std::vector<long long> next(prev.begin(), prev.end());
    long long total = 0;
    for (int k = 0; k < n; ++k) {
      layer.push_back({k, k, 1});
      layer.push_back({k, n, 1});
      total += prev[static_cast<std::size_t>(k)];
    }
    next.push_back(total);
    d.dims.push_back(std::move(next));
    d.edges.push_back(std::move(layer));
    std::vector<std::string> labels;
    for (int k = 1; k <= n + 1; ++k) labels.push_back(std::to_string(k));
    d.labels.push_back(std::move(labels));
  }
  d.validate();
  return d;
}

int y_position(int k) { return k - 1; }

int strictly_rfd_left_position(int k) { return k - 1; }

int strictly_rfd_right_position(int level, int j) { return level + j - 1; }

BratteliDiagram build_strictly_rfd(int depth) {
  check_depth_arg(depth);
  BratteliDiagram d;
  d.rule = "strictly_rfd";
  d.monotone_growth = true;
  d.dims.push_back({1, 1});
  d.labels.push_back({"L1", "R1"});
  for (int n = 1; n < depth; ++n) {
    const auto& prev = d.dims.back();
    std::vector<Edge> layer;
    std::vector<long long> next(static_cast<std::size_t>(2 * (n + 1)), 0);

    // left half: column edges plus everything into the new left vertex
    long long left_total = 0;
    for (int k = 1; k <= n; ++k) {
      layer.push_back({strictly_rfd_left_position(k), strictly_rfd_left_position(k), 1});
      layer.push_back({strictly_rfd_left_position(k), strictly_rfd_left_position(n + 1), 1});
      left_total += prev[static_cast<std::size_t>(strictly_rfd_left_position(k))];
      next[static_cast<std::size_t>(strictly_rfd_left_position(k))] =
          prev[static_cast<std::size_t>(strictly_rfd_left_position(k))];
    }

    // right half: shift one column over and feed the new first column
    long long right_total = 0;
    for (int j = 1; j <= n; ++j) {
      layer.push_back({strictly_rfd_right_position(n, j),
                       strictly_rfd_right_position(n + 1, j + 1), 1});
      layer.push_back({strictly_rfd_right_position(n, j),
                       strictly_rfd_right_position(n + 1, 1), 1});
      right_total += prev[static_cast<std::size_t>(strictly_rfd_right_position(n, j))];
      next[static_cast<std::size_t>(strictly_rfd_right_position(n + 1, j + 1))] =
          prev[static_cast<std::size_t>(strictly_rfd_right_position(n, j))];
    }
    next[static_cast<std::size_t>(strictly_rfd_right_position(n + 1, 1))] = right_total;

    // the coupling: the first right column feeds the new left vertex
    layer.push_back({strictly_rfd_right_position(n, 1), strictly_rfd_left_position(n + 1), 1});
    next[static_cast<std::size_t>(strictly_rfd_left_position(n + 1))] =
        left_total + prev[static_cast<std::size_t>(strictly_rfd_right_position(n, 1))];

    d.dims.push_back(std::move(next));
    d.edges.push_back(std::move(layer));
    std::vector<std::string> labels;
    for (int k = 1; k <= n + 1; ++k) labels.push_back("L" + std::to_string(k));
    for (int j = 1; j <= n + 1; ++j) labels.push_back("R" + std::to_string(j));
    d.labels.push_back(std::move(labels));
  }
  d.validate();
  return d;
}

std::optional<IdealViolation> check_ideal(const BratteliDiagram& d,
                                          const std::vector<std::set<int>>& members) {
  require_same_shape(d, members);
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    for (const Edge& e : d.edges[i]) {
      if (members[i].contains(e.from) && !members[i + 1].contains(e.to)) {
        return IdealViolation{IdealViolation::Kind::heredity, static_cast<int>(i + 1), e.from,
                              e.to};
      }
    }
  }
  // saturation needs the outgoing edges, so the last level is exempt
  for (std::size_t i = 0; i + 1 < d.dims.size(); ++i) {
    for (int p = 0; p < static_cast<int>(d.dims[i].size()); ++p) {
      if (members[i].contains(p)) continue;
      bool all_in = true;
      bool has_edge = false;
      for (const Edge& e : d.edges[i]) {
        if (e.from != p) continue;
        has_edge = true;
        if (!members[i + 1].contains(e.to)) {
          all_in = false;
          break;
        }
      }
      if (has_edge && all_in) {
        return IdealViolation{IdealViolation::Kind::saturation, static_cast<int>(i + 1), p, -1};
      }
    }
  }
  return std::nullopt;
}

bool is_ideal(const BratteliDiagram& d, const std::vector<std::set<int>>& members) {
  return !check_ideal(d, members).has_value();
}

DiagramIdeal ideal_from_open_set(const BratteliDiagram& d, const std::set<int>& omitted) {
  if (d.rule != "y_infty") {
    throw DomainError("open-set ideals are defined for the y_infty diagram");
  }
  for (int k : omitted) {
    if (k < 1) throw DomainError("omitted columns are positive integers");
  }
  DiagramIdeal u;
  u.members.resize(d.dims.size());
  int max_f = omitted.empty() ? 0 : *omitted.rbegin();
  for (int n = 1; n <= d.depth(); ++n) {
    if (n < max_f) continue;
    for (int k = 1; k <= n; ++k) {
      if (!omitted.contains(k)) u.members[static_cast<std::size_t>(n - 1)].insert(y_position(k));
    }
  }
  std::ostringstream desc;
  desc << "open set omitting {";
  bool first = true;
  for (int k : omitted) {
    if (!first) desc << ",";
    desc << k;
    first = false;
  }
  desc << "}";
  u.description = desc.str();
  u.stable_from = std::max(1, max_f);
  return u;
}

DiagramIdeal largest_ideal_avoiding(const BratteliDiagram& d,
                                    const std::vector<std::set<int>>& avoid,
                                    std::string description) {
  require_same_shape(d, avoid);
  // backward reachability: a vertex is excluded iff some descending path
  // from it hits the avoided set
  std::vector<std::set<int>> reaches = avoid;
  for (std::size_t i = d.edges.size(); i-- > 0;) {
    for (const Edge& e : d.edges[i]) {
      if (reaches[i + 1].contains(e.to)) reaches[i].insert(e.from);
    }
  }
  DiagramIdeal u;
  u.members = complement_sets(d, reaches);
  u.description = std::move(description);
  return u;
}

DiagramIdeal strictly_rfd_left_ideal(const BratteliDiagram& d) {
  if (d.rule != "strictly_rfd") throw DomainError("left-half ideal needs the strictly_rfd diagram");
  DiagramIdeal u;
  u.members.resize(d.dims.size());
  for (int n = 1; n <= d.depth(); ++n) {
    for (int k = 1; k <= n; ++k) {
      u.members[static_cast<std::size_t>(n - 1)].insert(strictly_rfd_left_position(k));
    }
  }
  u.description = "left half";
  return u;
}

DiagramIdeal strictly_rfd_column_ideal(const BratteliDiagram& d, int k) {
  if (d.rule != "strictly_rfd") {
    throw DomainError("column ideals are defined for the strictly_rfd diagram");
  }
  if (k < 1 || k > d.depth()) throw DomainError("column out of range");
  std::vector<std::set<int>> avoid(d.dims.size());
  for (int n = k; n <= d.depth(); ++n) {
    avoid[static_cast<std::size_t>(n - 1)].insert(strictly_rfd_left_position(k));
  }
  DiagramIdeal u = largest_ideal_avoiding(d, avoid, "largest ideal avoiding left column " +
                                                        std::to_string(k));
  u.stable_from = k;
  return u;
}

BratteliDiagram quotient(const BratteliDiagram& d, const DiagramIdeal& u) {
  if (auto v = check_ideal(d, u.members)) {
    throw DomainError("quotient requires an ideal (closure condition fails at level " +
                      std::to_string(v->level) + ")");
  }
  std::vector<std::set<int>> keep = complement_sets(d, u.members);
  BratteliDiagram q;
  q.rule = d.rule.empty() ? "" : d.rule + " quotient";
  q.stable_from = u.stable_from;
  std::vector<std::vector<int>> remap(d.dims.size());
  for (std::size_t i = 0; i < d.dims.size(); ++i) {
    remap[i].assign(d.dims[i].size(), -1);
    std::vector<long long> dims;
    std::vector<std::string> labels;
    for (int p : keep[i]) {
      remap[i][static_cast<std::size_t>(p)] = static_cast<int>(dims.size());
      dims.push_back(d.dims[i][static_cast<std::size_t>(p)]);
      if (!d.labels.empty()) labels.push_back(d.labels[i][static_cast<std::size_t>(p)]);
    }
    q.dims.push_back(std::move(dims));
    if (!d.labels.empty()) q.labels.push_back(std::move(labels));
  }
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    std::vector<Edge> layer;
    for (const Edge& e : d.edges[i]) {
      int nf = remap[i][static_cast<std::size_t>(e.from)];
      int nt = remap[i + 1][static_cast<std::size_t>(e.to)];
      if (nf >= 0 && nt >= 0) layer.push_back({nf, nt, e.mult});
    }
    q.edges.push_back(std::move(layer));
  }
  // trailing empty levels would make the edge-layer/level count mismatch
  while (!q.dims.empty() && q.dims.back().empty()) {
    q.dims.pop_back();
    if (!q.edges.empty()) q.edges.pop_back();
    if (!q.labels.empty()) q.labels.pop_back();
  }
  if (q.dims.empty()) return q;
  q.validate();
  return q;
}

LimitDimension limit_dimension(const BratteliDiagram& d, int horizon) {
  LimitDimension out;
  if (d.dims.empty()) {
    out.kind = LimitDimension::Kind::finite;
    return out;
  }
  if (horizon < 1 || horizon > d.depth()) {
    throw DomainError("horizon must lie within the materialized depth");
  }

  // isomorphism tail: every step is a multiplicity-one bijection
  auto iso_step = [&](std::size_t i) {
    if (d.dims[i].size() != d.dims[i + 1].size()) return false;
    std::vector<int> in(d.dims[i + 1].size(), 0), outdeg(d.dims[i].size(), 0);
    for (const Edge& e : d.edges[i]) {
      if (e.mult != 1) return false;
      in[static_cast<std::size_t>(e.to)] += 1;
      outdeg[static_cast<std::size_t>(e.from)] += 1;
    }
    for (int c : in) {
      if (c != 1) return false;
    }
    for (int c : outdeg) {
      if (c != 1) return false;
    }
    return true;
  };

  if (horizon >= 2 && d.stable_from > 0 && d.stable_from <= horizon) {
    int tail_start = horizon;
    while (tail_start >= 2 && iso_step(static_cast<std::size_t>(tail_start - 2))) --tail_start;
    if (tail_start < horizon && tail_start <= d.stable_from) {
      out.kind = LimitDimension::Kind::finite;
      out.dims = d.dims[static_cast<std::size_t>(horizon - 1)];
      std::sort(out.dims.begin(), out.dims.end());
      return out;
    }
  }

  if (d.monotone_growth) {
    bool strictly = true;
    for (int n = 1; n < horizon; ++n) {
      if (d.level_dimension(n) >= d.level_dimension(n + 1)) {
        strictly = false;
        break;
      }
    }
    if (strictly && horizon >= 2) {
      out.kind = LimitDimension::Kind::infinite;
      return out;
    }
  }

  out.kind = LimitDimension::Kind::undetermined;
  return out;
}

std::vector<long long> primitive_quotient_sizes(const BratteliDiagram& d, int j_max) {
  if (d.rule != "y_infty") {
    throw DomainError("primitive quotient sizes are defined for the y_infty diagram");
  }
  if (j_max < 1) throw DomainError("j_max must be >= 1");
  if (d.depth() < j_max + 1) {
    throw DomainError("insufficient depth: need at least " + std::to_string(j_max + 1) +
                      " materialized levels");
  }
  std::vector<long long> sizes;
  for (int j = 1; j <= j_max; ++j) {
    BratteliDiagram q = quotient(d, ideal_from_open_set(d, {j}));
    LimitDimension lim = limit_dimension(q, q.depth());
    if (lim.kind != LimitDimension::Kind::finite || lim.dims.size() != 1) {
      throw DomainError("primitive quotient did not stabilize to a single block");
    }
    sizes.push_back(lim.dims[0]);
  }
  return sizes;
}

std::vector<DiagramIdeal> enumerate_ideals(const BratteliDiagram& d, int depth, const Caps& caps) {
  if (depth < 1 || depth > d.depth()) throw DomainError("enumeration depth out of range");
  int vertices = 0;
  for (int i = 0; i < depth; ++i) vertices += static_cast<int>(d.dims[static_cast<std::size_t>(i)].size());
  if (vertices > caps.ideal_enum_vertex_cap || vertices > 25) {
    throw ResourceError("ideal enumeration over " + std::to_string(vertices) +
                        " vertices exceeds the cap of " +
                        std::to_string(std::min(caps.ideal_enum_vertex_cap, 25)));
  }

  // flatten vertices of the truncation and precompute bit tests
  std::vector<int> offset(static_cast<std::size_t>(depth) + 1, 0);
  for (int i = 0; i < depth; ++i) {
    offset[static_cast<std::size_t>(i + 1)] =
        offset[static_cast<std::size_t>(i)] + static_cast<int>(d.dims[static_cast<std::size_t>(i)].size());
  }
  struct FlatEdge {
    std::uint32_t from_bit;
    std::uint32_t to_bit;
  };
  std::vector<FlatEdge> flat_edges;
  std::vector<std::uint32_t> target_mask(static_cast<std::size_t>(vertices), 0);
  std::vector<bool> has_out(static_cast<std::size_t>(vertices), false);
  for (int i = 0; i + 1 < depth; ++i) {
    for (const Edge& e : d.edges[static_cast<std::size_t>(i)]) {
      std::uint32_t fb = 1u << (offset[static_cast<std::size_t>(i)] + e.from);
      std::uint32_t tb = 1u << (offset[static_cast<std::size_t>(i + 1)] + e.to);
      flat_edges.push_back({fb, tb});
      target_mask[static_cast<std::size_t>(offset[static_cast<std::size_t>(i)] + e.from)] |= tb;
      has_out[static_cast<std::size_t>(offset[static_cast<std::size_t>(i)] + e.from)] = true;
    }
  }

  std::vector<DiagramIdeal> out;
  const std::uint32_t limit = static_cast<std::uint32_t>(1u << vertices);
  for (std::uint32_t mask = 0; mask < limit; ++mask) {
    bool ok = true;
    for (const FlatEdge& e : flat_edges) {
      if ((mask & e.from_bit) && !(mask & e.to_bit)) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (int v = 0; v < vertices && ok; ++v) {
      if (!has_out[static_cast<std::size_t>(v)]) continue;
      if ((mask & (1u << v)) == 0 &&
          (mask & target_mask[static_cast<std::size_t>(v)]) == target_mask[static_cast<std::size_t>(v)]) {
        ok = false;
      }
    }
    if (!ok) continue;
    DiagramIdeal u;
    u.members.resize(d.dims.size());
    for (int i = 0; i < depth; ++i) {
      for (int p = 0; p < static_cast<int>(d.dims[static_cast<std::size_t>(i)].size()); ++p) {
        if (mask & (1u << (offset[static_cast<std::size_t>(i)] + p))) {
          u.members[static_cast<std::size_t>(i)].insert(p);
        }
      }
    }
    u.description = "enumerated at depth " + std::to_string(depth);
    out.push_back(std::move(u));
  }
  return out;
}

bool is_essential(const BratteliDiagram& d, const DiagramIdeal& u, int enum_depth,
                  const Caps& caps) {
  require_same_shape(d, u.members);
  for (const DiagramIdeal& v : enumerate_ideals(d, enum_depth, caps)) {
    if (v.empty()) continue;
    // extend v hereditarily through the whole materialized diagram
    std::vector<std::set<int>> ext = v.members;
    for (std::size_t i = 0; i < d.edges.size(); ++i) {
      for (const Edge& e : d.edges[i]) {
        if (ext[i].contains(e.from)) ext[i + 1].insert(e.to);
      }
    }
    bool meets = false;
    for (std::size_t i = 0; i < ext.size() && !meets; ++i) {
      for (int p : ext[i]) {
        if (u.members[i].contains(p)) {
          meets = true;
          break;
        }
      }
    }
    if (!meets) return false;
  }
  return true;
}

std::string to_dot(const BratteliDiagram& d, const DiagramIdeal* mark) {
  std::ostringstream os;
  os << "digraph bratteli {\n  rankdir=TB;\n  node [shape=circle];\n";
  for (std::size_t i = 0; i < d.dims.size(); ++i) {
    os << "  { rank=same;";
    for (std::size_t p = 0; p < d.dims[i].size(); ++p) {
      std::string label = d.labels.empty() ? std::to_string(p + 1) : d.labels[i][p];
      bool marked = mark && i < mark->members.size() &&
                    mark->members[i].contains(static_cast<int>(p));
      os << " v" << i + 1 << "_" << p << " [label=\"" << label << ":" << d.dims[i][p] << "\"";
      if (marked) os << ", style=filled, fillcolor=lightblue";
      os << "];";
    }
    os << " }\n";
  }
  for (std::size_t i = 0; i < d.edges.size(); ++i) {
    for (const Edge& e : d.edges[i]) {
      os << "  v" << i + 1 << "_" << e.from << " -> v" << i + 2 << "_" << e.to;
      if (e.mult > 1) os << " [label=\"x" << e.mult << "\"]";
      os << ";\n";
    }
  }
  os << "}\n";
  return os.str();
}

}  // namespace justinf::bratteli
