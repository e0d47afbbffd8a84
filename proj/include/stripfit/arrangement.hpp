#pragma once

// Exact incremental arrangement of dual lines: per-line sorted vertex lists
// with merged concurrent intersections, derived half-edge/face traversal
// (one-point compactification with a single vertex at infinity), zone
// reports, and the U/L/M envelope and Q+/Q- chain operations.

#include <algorithm>
#include <cstdio>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "stripfit/chain.hpp"

namespace stripfit {

struct ArrVertex {
  ExactQ u;
  ExactQ v;
  std::vector<int> lines;  // incident active line ids, ascending
  bool alive = false;
};

struct ArrangementUpdate {
  std::vector<int> created_vertices;
  std::vector<int> destroyed_vertices;
  std::vector<int> touched_vertices;  // incidence set changed
};

// Half-edge handle: edge `edge` of `line` (edge k lies between the k-th and
// (k+1)-th vertex on the line, with rays at the ends), traveled in +u
// (dir=+1) or -u (dir=-1) direction; the face lies to the left.
struct HalfEdge {
  int line = -1;
  int edge = -1;
  int dir = 0;

  friend bool operator==(const HalfEdge& a, const HalfEdge& b) {
    return a.line == b.line && a.edge == b.edge && a.dir == b.dir;
  }
  friend bool operator<(const HalfEdge& a, const HalfEdge& b) {
    if (a.line != b.line) return a.line < b.line;
    if (a.edge != b.edge) return a.edge < b.edge;
    return a.dir < b.dir;
  }
};

struct ZoneReport {
  struct Crossing {
    double u = 0.0;
    double v = 0.0;
    std::vector<int> lines;
    bool at_vertex = false;
  };
  std::vector<Crossing> crossings;
  std::vector<HalfEdge> cells;  // canonical representative per visited face
  size_t vertices_crossed = 0;
  size_t edges_crossed = 0;
  size_t boundary_half_edges = 0;  // total cycle length over visited faces

  size_t cell_count() const { return cells.size(); }
  size_t elements() const {
    return cells.size() + vertices_crossed + edges_crossed;
  }
};

class DualArrangement {
 public:
  DualArrangement() = default;

  explicit DualArrangement(const std::vector<DLine>& lines) {
    for (const DLine& l : lines) insert_line(l.a, l.b);
  }

  int line_count() const {
    int n = 0;
    for (size_t i = 0; i < active_.size(); ++i)
      if (active_[i]) ++n;
    return n;
  }
  const std::vector<DLine>& lines() const { return lines_; }
  bool line_active(int id) const {
    return id >= 0 && id < int(active_.size()) && active_[id];
  }
  int multiplicity(int id) const { return mult_[id]; }
  const std::vector<ArrVertex>& vertices() const { return verts_; }
  const std::vector<int>& vertices_on(int line) const { return vlist_[line]; }

  size_t vertex_count() const {
    size_t n = 0;
    for (const ArrVertex& v : verts_)
      if (v.alive) ++n;
    return n;
  }
  size_t edge_count() const {
    size_t n = 0;
    for (size_t i = 0; i < lines_.size(); ++i)
      if (active_[i]) n += vlist_[i].size() + 1;
    return n;
  }

  // Insert a line; duplicate coefficient pairs are merged with multiplicity.
  int insert_line(double a, double b, ArrangementUpdate* upd = nullptr) {
    for (size_t i = 0; i < lines_.size(); ++i)
      if (active_[i] && lines_[i].a == a && lines_[i].b == b) {
        ++mult_[i];
        return int(i);
      }
    const int id = alloc_line(a, b);
    // Crossings with active lines, grouped by exact u (concurrency).
    std::vector<std::pair<ExactQ, int>> hits;
    for (size_t j = 0; j < lines_.size(); ++j) {
      if (!active_[j] || int(j) == id || lines_[j].a == a) continue;
      hits.emplace_back(crossing_u(lines_[id], lines_[j]), int(j));
    }
    std::sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) {
      return exactq_compare(x.first, y.first) < 0;
    });
    size_t k = 0;
    while (k < hits.size()) {
      size_t k2 = k + 1;
      while (k2 < hits.size() &&
             exactq_compare(hits[k].first, hits[k2].first) == 0)
        ++k2;
      const ExactQ& u = hits[k].first;
      const int j0 = hits[k].second;
      int vi = find_vertex_on(j0, u);
      if (vi < 0) {
        vi = alloc_vertex(u, vertex_v(u, j0, id));
        for (size_t t = k; t < k2; ++t) {
          verts_[vi].lines.push_back(hits[t].second);
          insert_into_vlist(hits[t].second, vi);
        }
        if (upd) upd->created_vertices.push_back(vi);
      } else {
        if (upd) upd->touched_vertices.push_back(vi);
      }
      verts_[vi].lines.push_back(id);
      std::sort(verts_[vi].lines.begin(), verts_[vi].lines.end());
      vlist_[id].push_back(vi);
      k = k2;
    }
    return id;
  }

  void delete_line(int id, ArrangementUpdate* upd = nullptr) {
    if (!line_active(id)) throw std::invalid_argument("delete of absent line");
    if (mult_[id] > 1) {
      --mult_[id];
      return;
    }
    for (int vi : vlist_[id]) {
      auto& ls = verts_[vi].lines;
      ls.erase(std::find(ls.begin(), ls.end(), id));
      if (ls.size() < 2) {
        for (int other : ls) remove_from_vlist(other, vi);
        verts_[vi].alive = false;
        if (upd) upd->destroyed_vertices.push_back(vi);
      } else if (upd) {
        upd->touched_vertices.push_back(vi);
      }
    }
    vlist_[id].clear();
    active_[id] = false;
  }

  std::vector<DLine> active_lines() const {
    std::vector<DLine> out;
    for (size_t i = 0; i < lines_.size(); ++i)
      if (active_[i]) out.push_back(lines_[i]);
    return out;
  }

  // ---- faces ------------------------------------------------------------

  HalfEdge next(const HalfEdge& h) const {
    const HalfEdge twin{h.line, h.edge, -h.dir};
    const int head = head_vertex(h);
    if (head >= 0) {
      // finite vertex: first outgoing strictly clockwise from the reversal
      return pick_rotation(outgoing_at(head), twin, /*ccw=*/false);
    }
    // vertex at infinity: orientation flips, first counter-clockwise
    return pick_rotation(outgoing_at_infinity(), twin, /*ccw=*/true);
  }

  // All face cycles (each as its canonical representative + length).
  std::vector<std::pair<HalfEdge, size_t>> faces() const {
    std::vector<std::pair<HalfEdge, size_t>> out;
    std::set<HalfEdge> seen;
    for (size_t i = 0; i < lines_.size(); ++i) {
      if (!active_[i]) continue;
      const int ecount = int(vlist_[i].size()) + 1;
      for (int e = 0; e < ecount; ++e)
        for (int dir : {+1, -1}) {
          HalfEdge h{int(i), e, dir};
          if (seen.count(h)) continue;
          HalfEdge rep = h;
          size_t len = 0;
          HalfEdge cur = h;
          do {
            seen.insert(cur);
            if (cur < rep) rep = cur;
            cur = next(cur);
            ++len;
          } while (!(cur == h));
          out.emplace_back(rep, len);
        }
    }
    return out;
  }

  size_t face_count() const {
    if (line_count() == 0) return 1;
    return faces().size();
  }

  // (V + 1) - E + F with the single vertex at infinity; 2 when consistent.
  long euler_characteristic() const {
    if (line_count() == 0) return 2;
    return long(vertex_count()) + 1 - long(edge_count()) + long(face_count());
  }

  // Face containing the point (u, v), identified by its canonical half-edge.
  HalfEdge locate_face(double u, double v) const {
    int best_below = -1, best_above = -1;
    double vb = 0.0, va = 0.0;
    for (size_t j = 0; j < lines_.size(); ++j) {
      if (!active_[j]) continue;
      const double val = lines_[j].eval(u);
      if (val < v && (best_below < 0 || val > vb)) {
        best_below = int(j);
        vb = val;
      }
      if (val >= v && (best_above < 0 || val < va)) {
        best_above = int(j);
        va = val;
      }
    }
    HalfEdge h;
    if (best_below >= 0)
      h = HalfEdge{best_below, edge_index_at(best_below, u), +1};
    else if (best_above >= 0)
      h = HalfEdge{best_above, edge_index_at(best_above, u), -1};
    else
      return HalfEdge{-1, -1, 0};  // empty arrangement: the whole plane
    return canonical_face(h);
  }

  HalfEdge canonical_face(const HalfEdge& h0) const {
    HalfEdge rep = h0, cur = h0;
    do {
      cur = next(cur);
      if (cur < rep) rep = cur;
    } while (!(cur == h0));
    return rep;
  }

  size_t face_cycle_length(const HalfEdge& h0) const {
    size_t len = 0;
    HalfEdge cur = h0;
    do {
      cur = next(cur);
      ++len;
    } while (!(cur == h0));
    return len;
  }

  // ---- zone -------------------------------------------------------------

  // Faces intersected by an arbitrary query line, left to right, plus the
  // crossing points with arrangement lines.
  ZoneReport zone_walk(const DLine& q) const {
    ZoneReport zr;
    std::vector<std::pair<ExactQ, int>> hits;
    for (size_t j = 0; j < lines_.size(); ++j) {
      if (!active_[j] || lines_[j].a == q.a) continue;
      DLine qq = q;
      qq.id = int(lines_.size()) + 1;  // canonical ordering only
      hits.emplace_back(crossing_u(qq, lines_[j]), int(j));
    }
    std::sort(hits.begin(), hits.end(), [](const auto& x, const auto& y) {
      return exactq_compare(x.first, y.first) < 0;
    });
    std::vector<double> cross_u;
    size_t k = 0;
    while (k < hits.size()) {
      size_t k2 = k + 1;
      while (k2 < hits.size() &&
             exactq_compare(hits[k].first, hits[k2].first) == 0)
        ++k2;
      ZoneReport::Crossing c;
      c.u = exactq_to_double(hits[k].first);
      c.v = q.eval(c.u);
      for (size_t t = k; t < k2; ++t) c.lines.push_back(hits[t].second);
      c.at_vertex = find_vertex_on(hits[k].second, hits[k].first) >= 0;
      if (c.at_vertex)
        ++zr.vertices_crossed;
      else
        ++zr.edges_crossed;
      cross_u.push_back(c.u);
      zr.crossings.push_back(std::move(c));
      k = k2;
    }
    if (line_count() == 0) {
      zr.cells.push_back(HalfEdge{-1, -1, 0});
      zr.boundary_half_edges = 0;
      return zr;
    }
    for (size_t g = 0; g <= cross_u.size(); ++g) {
      double um;
      if (cross_u.empty())
        um = 0.0;
      else if (g == 0)
        um = cross_u[0] - 1.0 - std::fabs(cross_u[0]);
      else if (g == cross_u.size())
        um = cross_u.back() + 1.0 + std::fabs(cross_u.back());
      else
        um = 0.5 * (cross_u[g - 1] + cross_u[g]);
      const HalfEdge rep = locate_face(um, q.eval(um));
      zr.cells.push_back(rep);
      if (rep.line >= 0) zr.boundary_half_edges += face_cycle_length(rep);
    }
    return zr;
  }

  // ---- canonical dump ---------------------------------------------------

  // Line-delimited canonical description: lines sorted by coefficients,
  // vertices sorted by exact (u, v), edges per line. Stable across
  // insertion orders, so it doubles as the topology-equality witness.
  std::string dump() const {
    std::vector<int> order;
    for (size_t i = 0; i < lines_.size(); ++i)
      if (active_[i]) order.push_back(int(i));
    std::sort(order.begin(), order.end(), [&](int x, int y) {
      if (lines_[x].a != lines_[y].a) return lines_[x].a < lines_[y].a;
      return lines_[x].b < lines_[y].b;
    });
    std::vector<int> rank(lines_.size(), -1);
    for (size_t r = 0; r < order.size(); ++r) rank[order[r]] = int(r);

    std::vector<int> valive;
    for (size_t v = 0; v < verts_.size(); ++v)
      if (verts_[v].alive) valive.push_back(int(v));
    std::sort(valive.begin(), valive.end(), [&](int x, int y) {
      const int cu = exactq_compare(verts_[x].u, verts_[y].u);
      if (cu != 0) return cu < 0;
      return exactq_compare(verts_[x].v, verts_[y].v) < 0;
    });
    std::vector<int> vrank(verts_.size(), -1);
    for (size_t r = 0; r < valive.size(); ++r) vrank[valive[r]] = int(r);

    std::string out;
    char buf[160];
    std::snprintf(buf, sizeof buf, "lines %zu\n", order.size());
    out += buf;
    for (size_t r = 0; r < order.size(); ++r) {
      const DLine& l = lines_[order[r]];
      std::snprintf(buf, sizeof buf, "line %zu a=%.17g b=%.17g mult=%d\n", r,
                    l.a, l.b, mult_[order[r]]);
      out += buf;
    }
    std::snprintf(buf, sizeof buf, "vertices %zu\n", valive.size());
    out += buf;
    for (size_t r = 0; r < valive.size(); ++r) {
      const ArrVertex& V = verts_[valive[r]];
      // report v through the coefficient-smallest incident line
      int jmin = V.lines[0];
      for (int j : V.lines)
        if (lines_[j].a < lines_[jmin].a ||
            (lines_[j].a == lines_[jmin].a && lines_[j].b < lines_[jmin].b))
          jmin = j;
      const double uu = exactq_to_double(V.u);
      std::snprintf(buf, sizeof buf, "vertex %zu u=%.17g v=%.17g lines=", r, uu,
                    lines_[jmin].eval(uu));
      out += buf;
      std::vector<int> ranks;
      for (int j : V.lines) ranks.push_back(rank[j]);
      std::sort(ranks.begin(), ranks.end());
      for (size_t t = 0; t < ranks.size(); ++t) {
        std::snprintf(buf, sizeof buf, "%s%d", t ? "," : "", ranks[t]);
        out += buf;
      }
      out += "\n";
    }
    out += "edges\n";
    for (size_t r = 0; r < order.size(); ++r) {
      const int id = order[r];
      std::string prev = "-inf";
      for (int vi : vlist_[id]) {
        std::snprintf(buf, sizeof buf, "edge line=%zu from=%s to=v%d\n", r,
                      prev.c_str(), vrank[vi]);
        out += buf;
        prev = "v" + std::to_string(vrank[vi]);
      }
      std::snprintf(buf, sizeof buf, "edge line=%zu from=%s to=+inf\n", r,
                    prev.c_str());
      out += buf;
    }
    return out;
  }

  bool topology_equals(const DualArrangement& other) const {
    return dump() == other.dump();
  }

 private:
  std::vector<DLine> lines_;
  std::vector<char> active_;
  std::vector<int> mult_;
  std::vector<ArrVertex> verts_;
  std::vector<std::vector<int>> vlist_;  // per line, vertex ids sorted by u

  int alloc_line(double a, double b) {
    const int id = int(lines_.size());
    lines_.push_back(DLine{a, b, id});
    active_.push_back(1);
    mult_.push_back(1);
    vlist_.emplace_back();
    return id;
  }

  int alloc_vertex(const ExactQ& u, ExactQ v) {
    verts_.push_back(ArrVertex{u, std::move(v), {}, true});
    return int(verts_.size()) - 1;
  }

  ExactQ vertex_v(const ExactQ& u, int j, int id) const {
    // evaluate on the coefficient-smaller of the two defining lines
    const DLine& lj = lines_[j];
    const DLine& li = lines_[id];
    const DLine& l =
        (lj.a < li.a || (lj.a == li.a && lj.b < li.b)) ? lj : li;
    return ExactQ::ratio(
        expansion_diff(scale_expansion(u.num, l.a), scale_expansion(u.den, l.b)),
        u.den);
  }

  int find_vertex_on(int line, const ExactQ& u) const {
    const auto& vl = vlist_[line];
    size_t lo = 0, hi = vl.size();
    while (lo < hi) {
      const size_t mid = (lo + hi) / 2;
      const int c = exactq_compare(verts_[vl[mid]].u, u);
      if (c == 0) return vl[mid];
      if (c < 0)
        lo = mid + 1;
      else
        hi = mid;
    }
    return -1;
  }

  void insert_into_vlist(int line, int vi) {
    auto& vl = vlist_[line];
    const auto pos = std::lower_bound(
        vl.begin(), vl.end(), vi, [&](int x, int y) {
          return exactq_compare(verts_[x].u, verts_[y].u) < 0;
        });
    vl.insert(pos, vi);
  }

  void remove_from_vlist(int line, int vi) {
    auto& vl = vlist_[line];
    vl.erase(std::find(vl.begin(), vl.end(), vi));
  }

  int edge_index_at(int line, double u) const {
    const auto& vl = vlist_[line];
    size_t lo = 0, hi = vl.size();
    while (lo < hi) {
      const size_t mid = (lo + hi) / 2;
      if (exactq_to_double(verts_[vl[mid]].u) <= u)
        lo = mid + 1;
      else
        hi = mid;
    }
    return int(lo);
  }

  // head vertex id of a half-edge, or -1 for the vertex at infinity
  int head_vertex(const HalfEdge& h) const {
    const auto& vl = vlist_[h.line];
    if (h.dir > 0) return h.edge < int(vl.size()) ? vl[h.edge] : -1;
    return h.edge > 0 ? vl[h.edge - 1] : -1;
  }

  struct Dir {
    double sx;  // +-1
    double dy;
  };

  Dir dir_of(const HalfEdge& h) const {
    return h.dir > 0 ? Dir{1.0, lines_[h.line].a} : Dir{-1.0, -lines_[h.line].a};
  }

  // Counter-clockwise angular order; parallel ray-ends at infinity are
  // nested by offset, with the nesting reversed between the two ends (the
  // one-point compactification brings parallels together tangentially).
  bool rot_less(const HalfEdge& x, const HalfEdge& y) const {
    const Dir a = dir_of(x), b = dir_of(y);
    const int qa = a.sx > 0 ? 0 : 1;
    const int qb = b.sx > 0 ? 0 : 1;
    if (qa != qb) return qa < qb;
    const double ka = qa == 0 ? a.dy : -a.dy;
    const double kb = qb == 0 ? b.dy : -b.dy;
    if (ka != kb) return ka < kb;
    const double bx = lines_[x.line].b, by = lines_[y.line].b;
    if (bx != by) return a.sx > 0 ? bx < by : bx > by;
    return false;
  }

  // outgoing half-edges at a finite vertex
  std::vector<HalfEdge> outgoing_at(int vi) const {
    std::vector<HalfEdge> out;
    for (int j : verts_[vi].lines) {
      const auto& vl = vlist_[j];
      const int idx = int(std::find(vl.begin(), vl.end(), vi) - vl.begin());
      out.push_back(HalfEdge{j, idx + 1, +1});
      out.push_back(HalfEdge{j, idx, -1});
    }
    return out;
  }

  // outgoing half-edges at the vertex at infinity (rays entering the plane)
  std::vector<HalfEdge> outgoing_at_infinity() const {
    std::vector<HalfEdge> out;
    for (size_t j = 0; j < lines_.size(); ++j) {
      if (!active_[j]) continue;
      out.push_back(HalfEdge{int(j), 0, +1});                       // from -inf
      out.push_back(HalfEdge{int(j), int(vlist_[j].size()), -1});   // from +inf
    }
    return out;
  }

  HalfEdge pick_rotation(std::vector<HalfEdge> cand, const HalfEdge& twin,
                         bool ccw) const {
    std::sort(cand.begin(), cand.end(),
              [&](const HalfEdge& x, const HalfEdge& y) { return rot_less(x, y); });
    size_t pos = cand.size();
    for (size_t i = 0; i < cand.size(); ++i)
      if (cand[i] == twin) {
        pos = i;
        break;
      }
    if (pos == cand.size())
      throw std::logic_error("arrangement: reversal edge missing");
    const size_t n = cand.size();
    const size_t nxt = ccw ? (pos + 1) % n : (pos + n - 1) % n;
    return cand[nxt];
  }
};

// Envelopes U, L and midpoint chain M of the active lines.
struct Envelopes {
  PiecewiseChain U, L;
  MidChain M;
};

inline Envelopes envelopes(const DualArrangement& arr) {
  const std::vector<DLine> ls = arr.active_lines();
  if (ls.empty()) throw std::invalid_argument("envelopes: no lines");
  Envelopes e;
  e.U = envelope_of_lines(ls, true);
  e.L = envelope_of_lines(ls, false);
  e.M = mid_of_envelopes(e.U, e.L);
  return e;
}

// Q+/Q- chains of a subset of the arrangement's lines relative to M.
inline std::pair<PiecewiseChain, PiecewiseChain> mid_chains(
    const DualArrangement& arr, const MidChain& m, const std::vector<int>& subset) {
  for (int id : subset)
    if (!arr.line_active(id))
      throw std::invalid_argument("mid_chains: inactive subset line");
  return {build_side_chain(subset, m, arr.lines(), true),
          build_side_chain(subset, m, arr.lines(), false)};
}

}  // namespace stripfit
