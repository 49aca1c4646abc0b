#pragma once

// Qudit Kitaev models on an oriented graph drawn on a closed orientable
// surface, with path / dual path operators, charges, normaliser
// generators and the shifted / twisted variants of the vertex side.

#include <algorithm>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "qstab/stabilizer.hpp"

namespace qstab {

enum class Side { Left, Right };

struct Edge {
  Int id;
  Int tail;
  Int head;
};

struct FaceStep {
  Int edge;  // edge id
  Side side;
};

/// Vertices, edges and faces by user-facing id; faces are boundary walks.
struct SurfaceGraph {
  std::vector<Int> vertices;
  std::vector<Edge> edges;
  std::vector<std::vector<FaceStep>> faces;
};

/// Index lookups and the left/right face of every edge, after validation.
class SurfaceIndex {
 public:
  explicit SurfaceIndex(const SurfaceGraph& g) {
    for (std::size_t i = 0; i < g.vertices.size(); ++i)
      if (!vertex_.emplace(g.vertices[i], i).second)
        throw Error(ErrorKind::BadSurface, "duplicate vertex id " + std::to_string(g.vertices[i]));
    for (std::size_t i = 0; i < g.edges.size(); ++i) {
      const Edge& e = g.edges[i];
      if (!edge_.emplace(e.id, i).second) throw Error(ErrorKind::BadSurface, "duplicate edge id " + std::to_string(e.id));
      if (!vertex_.count(e.tail) || !vertex_.count(e.head))
        throw Error(ErrorKind::BadSurface, "edge " + std::to_string(e.id) + " has an unknown endpoint");
      tail_.push_back(vertex_.at(e.tail));
      head_.push_back(vertex_.at(e.head));
    }
    const std::size_t none = g.faces.size();
    left_.assign(g.edges.size(), none);
    right_.assign(g.edges.size(), none);
    for (std::size_t f = 0; f < g.faces.size(); ++f) {
      if (g.faces[f].empty()) throw Error(ErrorKind::BadSurface, "face " + std::to_string(f) + " has an empty boundary");
      for (const FaceStep& st : g.faces[f]) {
        if (!edge_.count(st.edge))
          throw Error(ErrorKind::BadSurface, "face " + std::to_string(f) + " uses unknown edge " + std::to_string(st.edge));
        auto& slot = st.side == Side::Left ? left_ : right_;
        std::size_t e = edge_.at(st.edge);
        if (slot[e] != none)
          throw Error(ErrorKind::BadSurface, "edge " + std::to_string(st.edge) + " has two faces on one side",
                      {st.edge});
        slot[e] = f;
      }
    }
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      if (left_[e] == none || right_[e] == none)
        throw Error(ErrorKind::BadSurface, "edge " + std::to_string(g.edges[e].id) + " is missing a face side",
                    {g.edges[e].id});
    if (g.vertices.empty()) throw Error(ErrorKind::BadSurface, "graph has no vertices");
    // connectivity
    std::vector<std::vector<std::size_t>> adj(g.vertices.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e) {
      adj[tail_[e]].push_back(head_[e]);
      adj[head_[e]].push_back(tail_[e]);
    }
    std::vector<bool> seen(g.vertices.size(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      std::size_t u = stack.back();
      stack.pop_back();
      for (std::size_t w : adj[u])
        if (!seen[w]) {
          seen[w] = true;
          ++reached;
          stack.push_back(w);
        }
    }
    if (reached != g.vertices.size()) throw Error(ErrorKind::Disconnected, "graph is not connected");
  }

  std::size_t vertex(Int id) const {
    auto it = vertex_.find(id);
    if (it == vertex_.end()) throw Error(ErrorKind::BadSurface, "unknown vertex id " + std::to_string(id));
    return it->second;
  }
  std::size_t edge(Int id) const {
    auto it = edge_.find(id);
    if (it == edge_.end()) throw Error(ErrorKind::BadSurface, "unknown edge id " + std::to_string(id));
    return it->second;
  }
  std::size_t tail(std::size_t e) const { return tail_[e]; }
  std::size_t head(std::size_t e) const { return head_[e]; }
  std::size_t left_face(std::size_t e) const { return left_[e]; }
  std::size_t right_face(std::size_t e) const { return right_[e]; }

 private:
  std::map<Int, std::size_t> vertex_, edge_;
  std::vector<std::size_t> tail_, head_, left_, right_;
};

inline Int euler_characteristic(const SurfaceGraph& g) {
  return static_cast<Int>(g.vertices.size()) - static_cast<Int>(g.edges.size()) + static_cast<Int>(g.faces.size());
}

/// (2 - chi) / 2.
inline Int genus(const SurfaceGraph& g) {
  Int chi = euler_characteristic(g);
  if (mod(chi, 2) != 0) throw Error(ErrorKind::OddEuler, "Euler characteristic " + std::to_string(chi) + " is odd");
  if (chi > 2) throw Error(ErrorKind::BadSurface, "Euler characteristic above 2");
  return (2 - chi) / 2;
}

struct KitaevModel {
  SurfaceGraph graph;
  Int d;
  std::vector<Pauli> vertex_ops;  // A_s in vertex order
  std::vector<Pauli> face_ops;    // B_f in face order
  StabilizerGroup stabilizer;     // generated by all A_s then all B_f
  Int genus;
  std::vector<std::string> warnings;

  std::size_t qudits() const { return graph.edges.size(); }
};

inline KitaevModel build_model(const SurfaceGraph& graph, Int d) {
  SurfaceIndex ix(graph);
  const Int g = genus(graph);
  const std::size_t n = graph.edges.size(), S = graph.vertices.size(), F = graph.faces.size();
  std::vector<std::string> warnings;
  std::vector<Pauli> A, B;
  for (std::size_t s = 0; s < S; ++s) {
    Vec a(n, 0);
    for (std::size_t e = 0; e < n; ++e) {
      if (ix.head(e) == s) a[e] += 1;
      if (ix.tail(e) == s) a[e] -= 1;
    }
    A.emplace_back(d, 0, a, Vec(n, 0));
  }
  for (std::size_t f = 0; f < F; ++f) {
    Vec b(n, 0);
    for (const FaceStep& st : graph.faces[f]) b[ix.edge(st.edge)] += st.side == Side::Right ? 1 : -1;
    B.emplace_back(d, 0, Vec(n, 0), b);
  }
  for (std::size_t e = 0; e < n; ++e) {
    if (ix.tail(e) == ix.head(e))
      warnings.push_back("edge " + std::to_string(graph.edges[e].id) + " is a loop; it contributes nothing to A_s");
    if (ix.left_face(e) == ix.right_face(e))
      warnings.push_back("edge " + std::to_string(graph.edges[e].id) +
                         " has the same face on both sides; it contributes nothing to B_f");
  }
  for (std::size_t s = 0; s < S; ++s)
    for (std::size_t f = 0; f < F; ++f)
      if (!commute(A[s], B[f]))
        throw Error(ErrorKind::BadSurface, "face " + std::to_string(f) + " is not a consistent boundary walk",
                    {static_cast<Int>(s), static_cast<Int>(f)});
  Pauli prodA = Pauli::identity(d, n), prodB = Pauli::identity(d, n);
  for (auto& p : A) prodA = multiply(prodA, p);
  for (auto& p : B) prodB = multiply(prodB, p);
  if (!prodA.is_identity() || !prodB.is_identity())
    throw Error(ErrorKind::BadSurface, "vertex or face operators do not multiply to I");

  std::vector<Pauli> gens = A;
  gens.insert(gens.end(), B.begin(), B.end());
  StabilizerGroup H(d, n, gens);
  const std::size_t rank = S + F - 2;
  if (!H.tau().is_free() || H.tau().free_rank() != rank)
    throw Error(ErrorKind::BadSurface, "stabiliser is not free of rank #S + #F - 2");
  return KitaevModel{graph, d, std::move(A), std::move(B), std::move(H), g, std::move(warnings)};
}

struct PathStep {
  Int edge;      // edge id
  bool forward;  // traversed tail -> head
};

struct Path {
  Int start;  // vertex id
  std::vector<PathStep> steps;
};

/// Vertex ids visited, start first. Throws NotAPath.
inline std::vector<Int> path_vertices(const KitaevModel& m, const Path& t) {
  SurfaceIndex ix(m.graph);
  if (std::find(m.graph.vertices.begin(), m.graph.vertices.end(), t.start) == m.graph.vertices.end())
    throw Error(ErrorKind::NotAPath, "path starts at an unknown vertex");
  std::vector<Int> out{t.start};
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const PathStep& st = t.steps[i];
    std::size_t e;
    try {
      e = ix.edge(st.edge);
    } catch (const Error&) {
      throw Error(ErrorKind::NotAPath, "path uses unknown edge " + std::to_string(st.edge), {static_cast<Int>(i)});
    }
    const Edge& E = m.graph.edges[e];
    Int from = st.forward ? E.tail : E.head, to = st.forward ? E.head : E.tail;
    if (from != out.back())
      throw Error(ErrorKind::NotAPath, "step " + std::to_string(i) + " does not continue the path", {static_cast<Int>(i)});
    out.push_back(to);
  }
  return out;
}

/// S^Z(t): Z on edges traversed along their orientation, Z^{-1} against it.
inline Pauli path_operator(const KitaevModel& m, const Path& t) {
  path_vertices(m, t);
  SurfaceIndex ix(m.graph);
  Vec b(m.qudits(), 0);
  for (const PathStep& st : t.steps) b[ix.edge(st.edge)] += st.forward ? 1 : -1;
  return Pauli(m.d, 0, Vec(m.qudits(), 0), b);
}

struct DualStep {
  Int edge;            // crossed edge id
  bool left_to_right;  // from the face on its left to the face on its right
};

struct DualPath {
  std::size_t start;  // face index
  std::vector<DualStep> steps;
};

inline std::vector<std::size_t> dual_path_faces(const KitaevModel& m, const DualPath& t) {
  SurfaceIndex ix(m.graph);
  if (t.start >= m.graph.faces.size()) throw Error(ErrorKind::NotADualPath, "dual path starts at an unknown face");
  std::vector<std::size_t> out{t.start};
  for (std::size_t i = 0; i < t.steps.size(); ++i) {
    const DualStep& st = t.steps[i];
    std::size_t e;
    try {
      e = ix.edge(st.edge);
    } catch (const Error&) {
      throw Error(ErrorKind::NotADualPath, "dual path crosses unknown edge " + std::to_string(st.edge),
                  {static_cast<Int>(i)});
    }
    std::size_t from = st.left_to_right ? ix.left_face(e) : ix.right_face(e);
    std::size_t to = st.left_to_right ? ix.right_face(e) : ix.left_face(e);
    if (from != out.back())
      throw Error(ErrorKind::NotADualPath, "step " + std::to_string(i) + " does not continue the dual path",
                  {static_cast<Int>(i)});
    out.push_back(to);
  }
  return out;
}

/// S^X(t'): X on crossed edges pointing to the walker's right, X^{-1} on
/// those pointing left. Crossing from the right face to the left face the
/// arrow points right.
inline Pauli dual_path_operator(const KitaevModel& m, const DualPath& t) {
  dual_path_faces(m, t);
  SurfaceIndex ix(m.graph);
  Vec a(m.qudits(), 0);
  for (const DualStep& st : t.steps) a[ix.edge(st.edge)] += st.left_to_right ? -1 : 1;
  return Pauli(m.d, 0, a, Vec(m.qudits(), 0));
}

/// chi(A_s) = xi^{electric[s]}, chi(B_f) = xi^{magnetic[f]}.
struct ChargeConfiguration {
  Vec electric;
  Vec magnetic;
};

inline ChargeConfiguration charge_configuration(const KitaevModel& m, const CharacterMap& chi) {
  if (!is_consistent(m.stabilizer, chi)) throw Error(ErrorKind::InconsistentCharacter, "not a character of H");
  const std::size_t S = m.vertex_ops.size();
  return {Vec(chi.v.begin(), chi.v.begin() + static_cast<std::ptrdiff_t>(S)),
          Vec(chi.v.begin() + static_cast<std::ptrdiff_t>(S), chi.v.end())};
}

/// Loop operators from the fundamental cycles of a BFS tree rooted at the
/// first vertex, then dual loop operators from a BFS tree of the dual graph
/// rooted at the first face.
inline std::vector<Pauli> normalizer_generators(const KitaevModel& m) {
  SurfaceIndex ix(m.graph);
  const std::size_t S = m.graph.vertices.size(), F = m.graph.faces.size(), E = m.qudits();
  std::vector<Pauli> out;

  constexpr std::size_t none = static_cast<std::size_t>(-1);
  // primal tree: parent edge of each vertex
  std::vector<std::size_t> pedge(S, none), depth(S, 0);
  std::vector<bool> tree(E, false), seen(S, false);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = true;
  while (!q.empty()) {
    std::size_t u = q.front();
    q.pop();
    for (std::size_t e = 0; e < E; ++e) {
      std::size_t w;
      if (ix.tail(e) == u)
        w = ix.head(e);
      else if (ix.head(e) == u)
        w = ix.tail(e);
      else
        continue;
      if (seen[w]) continue;
      seen[w] = true;
      pedge[w] = e;
      depth[w] = depth[u] + 1;
      tree[e] = true;
      q.push(w);
    }
  }
  auto up = [&](std::size_t v) { return ix.tail(pedge[v]) == v ? ix.head(pedge[v]) : ix.tail(pedge[v]); };
  for (std::size_t e = 0; e < E; ++e) {
    if (tree[e]) continue;
    // tail -> head along e, then back to the tail through the tree
    Path t{m.graph.vertices[ix.tail(e)], {{m.graph.edges[e].id, true}}};
    std::size_t a = ix.head(e), b = ix.tail(e);
    std::vector<PathStep> down;
    while (a != b) {
      if (depth[a] >= depth[b]) {
        std::size_t pe = pedge[a];
        t.steps.push_back({m.graph.edges[pe].id, ix.tail(pe) == a});
        a = up(a);
      } else {
        std::size_t pe = pedge[b];
        down.push_back({m.graph.edges[pe].id, ix.head(pe) == b});
        b = up(b);
      }
    }
    t.steps.insert(t.steps.end(), down.rbegin(), down.rend());
    out.push_back(path_operator(m, t));
  }

  // dual tree over faces
  std::vector<std::size_t> fedge(F, none), fdepth(F, 0);
  std::vector<bool> dtree(E, false), fseen(F, false);
  q.push(0);
  fseen[0] = true;
  auto across = [&](std::size_t e, std::size_t f) { return ix.left_face(e) == f ? ix.right_face(e) : ix.left_face(e); };
  while (!q.empty()) {
    std::size_t f = q.front();
    q.pop();
    for (std::size_t e = 0; e < E; ++e) {
      if (ix.left_face(e) != f && ix.right_face(e) != f) continue;
      std::size_t h = across(e, f);
      if (fseen[h]) continue;
      fseen[h] = true;
      fedge[h] = e;
      fdepth[h] = fdepth[f] + 1;
      dtree[e] = true;
      q.push(h);
    }
  }
  for (std::size_t e = 0; e < E; ++e) {
    if (dtree[e]) continue;
    DualPath t{ix.left_face(e), {{m.graph.edges[e].id, true}}};
    std::size_t a = ix.right_face(e), b = ix.left_face(e);
    std::vector<DualStep> down;
    while (a != b) {
      if (fdepth[a] >= fdepth[b]) {
        std::size_t pe = fedge[a];
        t.steps.push_back({m.graph.edges[pe].id, ix.left_face(pe) == a});
        a = across(pe, a);
      } else {
        std::size_t pe = fedge[b];
        // stepping from parent into b
        down.push_back({m.graph.edges[pe].id, ix.right_face(pe) == b});
        b = across(pe, b);
      }
    }
    t.steps.insert(t.steps.end(), down.rbegin(), down.rend());
    out.push_back(dual_path_operator(m, t));
  }
  return out;
}

/// One modified vertex pair: path t from s0 to s with exponents (a, b).
struct ShiftPair {
  Int s0;
  Int s;
  Path path;
  Int a;
  Int b;
};

namespace detail {

inline StabilizerGroup modify_vertex_side(const KitaevModel& m, const std::vector<ShiftPair>& pairs, bool exact) {
  if (pairs.empty()) return m.stabilizer;
  const Int d = m.d;
  SurfaceIndex ix(m.graph);
  std::set<std::size_t> removed;
  const Int s0 = pairs.front().s0;
  std::vector<Pauli> extra;
  for (std::size_t r = 0; r < pairs.size(); ++r) {
    const ShiftPair& p = pairs[r];
    if (p.a <= 0 || p.b <= 0 || (exact ? p.a * p.b != d : (p.a * p.b) % d != 0))
      throw Error(ErrorKind::BadSplit,
                  "pair " + std::to_string(r) + ": " + std::to_string(p.a) + " * " + std::to_string(p.b) +
                      (exact ? " is not d" : " is not divisible by d"),
                  {static_cast<Int>(r)});
    if (p.s0 != s0) throw Error(ErrorKind::PathMismatch, "all pairs must share s0", {static_cast<Int>(r)});
    auto vs = path_vertices(m, p.path);
    if (vs.front() != p.s0 || vs.back() != p.s || p.s == s0)
      throw Error(ErrorKind::PathMismatch, "pair " + std::to_string(r) + ": path does not run from s0 to s",
                  {static_cast<Int>(r)});
    std::size_t sr = ix.vertex(p.s);
    if (!removed.insert(sr).second)
      throw Error(ErrorKind::PathMismatch, "vertex " + std::to_string(p.s) + " is used twice", {static_cast<Int>(r)});
    extra.push_back(power(m.vertex_ops[sr], p.a));
    extra.push_back(power(path_operator(m, p.path), p.b));
  }
  removed.insert(ix.vertex(s0));
  std::vector<Pauli> gens;
  for (std::size_t s = 0; s < m.vertex_ops.size(); ++s)
    if (!removed.count(s)) gens.push_back(m.vertex_ops[s]);
  gens.insert(gens.end(), m.face_ops.begin(), m.face_ops.end());
  gens.insert(gens.end(), extra.begin(), extra.end());
  return StabilizerGroup(d, m.qudits(), gens);
}

}  // namespace detail

/// Drops A_{s0} and every A_{s_r}, adds A_{s_r}^{a_r} and S^Z(t_r)^{b_r};
/// requires a_r b_r = d.
inline StabilizerGroup apply_shift(const KitaevModel& m, const std::vector<ShiftPair>& pairs) {
  return detail::modify_vertex_side(m, pairs, true);
}

/// As apply_shift with d | a_r b_r; V^H gains a factor C^{c_r}, c_r = a_r b_r / d.
inline StabilizerGroup apply_twist(const KitaevModel& m, const std::vector<ShiftPair>& pairs) {
  return detail::modify_vertex_side(m, pairs, false);
}

}  // namespace qstab
