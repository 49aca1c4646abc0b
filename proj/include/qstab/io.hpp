#pragma once

// JSON schemas for groups, graphs, shift pairs and reports, plus the
// command implementations behind the qstab tool. Each command returns the
// document to print and the exit code.

#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "qstab/kitaev.hpp"
#include "qstab/oracle.hpp"
#include "qstab/pauli_io.hpp"
#include "qstab/stabilizer.hpp"

namespace qstab::io {

using nlohmann::json;

inline constexpr const char* kVersion = "0.1.0";

enum ExitCode { kOk = 0, kValidation = 2, kOracleFailure = 3 };

inline json conventions() {
  return {{"normal_form", "zeta^c X1^a1 Z1^b1 ... Xn^an Zn^bn"},
          {"commutation", "Z X = xi X Z, xi = zeta^2"},
          {"tau", "(z-part, x-part) = (b, a)"},
          {"basis_order", "qudit 1 is the most significant digit"},
          {"charge_direction", "S^Z(t) for t: s1 -> s2 moves a charge -e from s1 to s2"},
          {"character", "chi(h_j) = xi^v_j"}};
}

/// Exact integers: a JSON number when it fits in int64, else a decimal string.
inline json big(const BigCount& c) {
  if (c <= BigCount(std::numeric_limits<std::int64_t>::max())) return static_cast<std::int64_t>(c);
  return c.str();
}

inline BigCount big_from(const json& j) {
  if (j.is_string()) return BigCount(j.get<std::string>());
  return BigCount(j.get<std::int64_t>());
}

inline json error_json(const Error& e) {
  return {{"error", {{"kind", std::string(to_string(e.kind()))}, {"message", e.what()}, {"detail", e.detail()}}}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, path + ": " + e.what());
  }
}

template <class F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::ParseError, std::string(what) + ": " + e.what());
  }
}

// ---- elements and groups

/// Element in a group payload: {phase, a, b} or text such as "X1^4 Z2".
inline Pauli element_from_json(const json& j, Int d, std::size_t n) {
  if (j.is_string()) return parse_pauli(j.get<std::string>(), d, n);
  return guarded("element", [&] {
    auto a = j.at("a").get<Vec>();
    auto b = j.at("b").get<Vec>();
    if (a.size() != n || b.size() != n) throw Error(ErrorKind::ParseError, "exponent vectors must have length n");
    return Pauli(d, j.value("phase", Int{0}), a, b);
  });
}

inline json element_json(const Pauli& p) { return {{"phase", p.phase()}, {"a", p.a()}, {"b", p.b()}}; }

/// {d, n, generators: [...]}; "gens" is accepted as an alias.
inline StabilizerGroup group_from_json(const json& j) {
  auto [d, n, raw] = guarded("group", [&] {
    Int d = j.at("d").get<Int>();
    std::size_t n = j.at("n").get<std::size_t>();
    json raw = j.contains("generators") ? j.at("generators") : j.at("gens");
    if (!raw.is_array()) throw Error(ErrorKind::ParseError, "generators must be an array");
    return std::tuple{d, n, raw};
  });
  if (d < 2) throw Error(ErrorKind::ParseError, "d must be at least 2");
  std::vector<Pauli> gens;
  for (const json& g : raw) gens.push_back(element_from_json(g, d, n));
  return StabilizerGroup(d, n, gens);
}

inline json group_json(const StabilizerGroup& H) {
  json gens = json::array();
  for (auto& g : H.generators()) gens.push_back(element_json(g));
  return {{"d", H.d()}, {"n", H.n()}, {"generators", gens}};
}

// ---- stabiliser reports

inline json report_json(const StabilizerReport& r) {
  json ops = json::array();
  for (auto& lp : r.logical_operators)
    ops.push_back({{"e", element_json(lp.e)}, {"f", element_json(lp.f)}, {"divisor", lp.divisor},
                   {"e_text", to_text(lp.e)}, {"f_text", to_text(lp.f)}});
  json css = nullptr;
  if (r.css) {
    json z = json::array(), x = json::array();
    for (auto& p : r.css->z_part) z.push_back(element_json(p));
    for (auto& p : r.css->x_part) x.push_back(element_json(p));
    css = {{"z", z}, {"x", x}};
  }
  return {{"d", r.d},
          {"n", r.n},
          {"cardinality", big(r.cardinality)},
          {"dim_protected", big(r.dim_protected)},
          {"tau_invariant_factors", r.tau_invariant_factors},
          {"quotient_divisors", r.quotient_divisors},
          {"canonical_chain", r.canonical_chain},
          {"classification", to_string(r.classification)},
          {"k", r.classification == Classification::General ? json(nullptr) : json(r.k)},
          {"heisenberg_order", big(r.heisenberg.order)},
          {"logical_operators", ops},
          {"css", css}};
}

/// The parts of a report that verify_report reads.
inline StabilizerReport report_from_json(const json& j) {
  return guarded("report", [&] {
    StabilizerReport r;
    r.d = j.at("d").get<Int>();
    r.n = j.at("n").get<std::size_t>();
    r.cardinality = big_from(j.at("cardinality"));
    r.dim_protected = big_from(j.at("dim_protected"));
    r.quotient_divisors = j.at("quotient_divisors").get<Vec>();
    r.canonical_chain = j.value("canonical_chain", Vec{});
    r.heisenberg.order = big_from(j.at("heisenberg_order"));
    r.heisenberg.block_divisors = r.quotient_divisors;
    const std::string c = j.at("classification").get<std::string>();
    r.classification = c == "FREE" ? Classification::Free
                       : c == "SHIFTED_FREE" ? Classification::ShiftedFree
                                             : Classification::General;
    for (const json& op : j.at("logical_operators"))
      r.logical_operators.push_back({element_from_json(op.at("e"), r.d, r.n), element_from_json(op.at("f"), r.d, r.n),
                                     op.at("divisor").get<Int>()});
    return r;
  });
}

inline json verdict_json(const OracleVerdict& v) {
  json hist = json::array();
  for (auto& [chi, dim] : v.histogram) hist.push_back({{"character", chi}, {"dim", big(dim)}});
  return {{"verdict", v.passed() ? "pass" : "fail"},
          {"checks",
           {{"dimension", v.dimension}, {"invariance", v.invariance}, {"relations", v.relations}, {"count", v.count}}},
          {"failures", v.failures},
          {"oracle_dim", big(v.oracle_dim)},
          {"histogram", hist}};
}

// ---- graphs and shift pairs

inline SurfaceGraph graph_from_json(const json& j) {
  return guarded("graph", [&] {
    SurfaceGraph g;
    g.vertices = j.at("vertices").get<std::vector<Int>>();
    for (const json& e : j.at("edges")) g.edges.push_back({e.at("id").get<Int>(), e.at("tail").get<Int>(), e.at("head").get<Int>()});
    for (const json& f : j.at("faces")) {
      std::vector<FaceStep> walk;
      for (const json& st : f) {
        const std::string side = st.at("side").get<std::string>();
        if (side != "left" && side != "right") throw Error(ErrorKind::ParseError, "side must be left or right");
        walk.push_back({st.at("edge").get<Int>(), side == "left" ? Side::Left : Side::Right});
      }
      g.faces.push_back(std::move(walk));
    }
    return g;
  });
}

inline json graph_json(const SurfaceGraph& g) {
  json edges = json::array(), faces = json::array();
  for (auto& e : g.edges) edges.push_back({{"id", e.id}, {"tail", e.tail}, {"head", e.head}});
  for (auto& f : g.faces) {
    json walk = json::array();
    for (auto& st : f) walk.push_back({{"edge", st.edge}, {"side", st.side == Side::Left ? "left" : "right"}});
    faces.push_back(walk);
  }
  return {{"vertices", g.vertices}, {"edges", edges}, {"faces", faces}};
}

inline Path path_from_json(const json& j) {
  return guarded("path", [&] {
    Path t{j.at("start").get<Int>(), {}};
    for (const json& st : j.at("steps")) t.steps.push_back({st.at("edge").get<Int>(), st.value("forward", true)});
    return t;
  });
}

/// {pairs: [{s0, s, path: {start, steps: [{edge, forward}]}, a, b}]}
inline std::vector<ShiftPair> shift_from_json(const json& j) {
  return guarded("shift pairs", [&] {
    std::vector<ShiftPair> out;
    for (const json& p : j.at("pairs"))
      out.push_back({p.at("s0").get<Int>(), p.at("s").get<Int>(), path_from_json(p.at("path")), p.at("a").get<Int>(),
                     p.at("b").get<Int>()});
    return out;
  });
}

// ---- text rendering

inline std::string report_text(const json& r) {
  std::ostringstream os;
  auto list = [](const json& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].dump();
    return s + ")";
  };
  os << "classification: " << r["classification"].get<std::string>();
  if (!r["k"].is_null()) os << "(" << r["k"].dump() << ")";
  os << "\n";
  os << "#H: " << r["cardinality"].dump() << "\n";
  os << "dim V^H: " << r["dim_protected"].dump() << "\n";
  os << "quotient divisors: " << list(r["quotient_divisors"]) << "\n";
  os << "canonical chain: " << list(r["canonical_chain"]) << "\n";
  os << "order of N(H)/H structure: " << r["heisenberg_order"].dump() << "\n";
  for (auto& op : r["logical_operators"])
    os << "logical pair (d_r = " << op["divisor"].dump() << "): " << op["e_text"].get<std::string>() << " | "
       << op["f_text"].get<std::string>() << "\n";
  os << "css: " << (r["css"].is_null() ? "no" : "yes") << "\n";
  return os.str();
}

inline std::string verdict_text(const json& v) {
  std::ostringstream os;
  os << "oracle verdict: " << v["verdict"].get<std::string>() << "\n";
  for (auto& [name, ok] : v["checks"].items()) os << "  " << name << ": " << (ok.get<bool>() ? "ok" : "FAILED") << "\n";
  for (auto& f : v["failures"]) os << "  " << f.get<std::string>() << "\n";
  os << "eigenspaces: " << v["histogram"].size() << " characters";
  if (!v["histogram"].empty()) os << " x dim " << v["histogram"][0]["dim"].dump();
  os << "\n";
  return os.str();
}

// ---- commands

struct Outcome {
  json document;
  int exit_code;
};

inline json envelope(const char* command, json body) {
  body["tool"] = {{"name", "qstab"}, {"version", kVersion}, {"command", command}};
  body["conventions"] = conventions();
  return body;
}

template <class F>
Outcome run_guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return {error_json(e), kValidation};
  }
}

inline Outcome cmd_analyze(const json& input) {
  return run_guarded([&] {
    auto H = group_from_json(input);
    return Outcome{envelope("analyze", {{"report", report_json(analyze(H))}}), kOk};
  });
}

inline Outcome cmd_canonicalize(const json& input) {
  return run_guarded([&] {
    auto H = group_from_json(input);
    auto c = canonical_conjugation(H);
    json psi_z = json::array(), psi_x = json::array(), conj = json::array();
    for (auto& p : c.psi.z_images) psi_z.push_back(element_json(p));
    for (auto& p : c.psi.x_images) psi_x.push_back(element_json(p));
    for (auto& p : c.conjugated) conj.push_back(element_json(p));
    json body = {{"d", H.d()},
                 {"n", H.n()},
                 {"beta", {{"z_images", c.beta.z_images}, {"x_images", c.beta.x_images}}},
                 {"automorphism", {{"z_images", psi_z}, {"x_images", psi_x}}},
                 {"phase_fix", element_json(c.phase_fix)},
                 {"conjugated_generators", conj}};
    return Outcome{envelope("canonicalize", body), kOk};
  });
}

/// `report` may be null, in which case the engine's own report is checked.
inline Outcome cmd_oracle_verify(const json& input, const json& report, std::size_t bound) {
  return run_guarded([&] {
    auto H = group_from_json(input);
    StabilizerReport r = report.is_null() ? analyze(H) : report_from_json(report.contains("report") ? report["report"] : report);
    auto v = verify_report(H, r, bound);
    return Outcome{envelope("oracle verify", {{"oracle", verdict_json(v)}}), v.passed() ? kOk : kOracleFailure};
  });
}

struct KitaevOptions {
  Int d = 2;
  json shift;  // null when absent
  json twist;
  bool verify = false;
  std::size_t bound = 200000;
};

inline Outcome cmd_kitaev_build(const json& graph_input, const KitaevOptions& opt) {
  return run_guarded([&] {
    auto graph = graph_from_json(graph_input);
    auto m = build_model(graph, opt.d);
    StabilizerGroup H = m.stabilizer;
    json body = {{"d", opt.d},
                 {"genus", m.genus},
                 {"euler", euler_characteristic(graph)},
                 {"vertices", graph.vertices.size()},
                 {"edges", graph.edges.size()},
                 {"faces", graph.faces.size()},
                 {"warnings", m.warnings}};
    if (!opt.shift.is_null() && !opt.twist.is_null())
      throw Error(ErrorKind::ParseError, "--shift and --twist are exclusive");
    if (!opt.shift.is_null()) {
      H = apply_shift(m, shift_from_json(opt.shift));
      body["modification"] = "shift";
    } else if (!opt.twist.is_null()) {
      H = apply_twist(m, shift_from_json(opt.twist));
      body["modification"] = "twist";
    }
    auto r = analyze(H);
    body["stabilizer"] = group_json(H);
    body["report"] = report_json(r);
    int code = kOk;
    if (opt.verify) {
      auto v = verify_report(H, r, opt.bound);
      body["oracle"] = verdict_json(v);
      if (!v.passed()) code = kOracleFailure;
    }
    return Outcome{envelope("kitaev build", body), code};
  });
}

inline std::string render(const Outcome& o, bool text) {
  if (!text) return o.document.dump(2) + "\n";
  const json& j = o.document;
  if (j.contains("error"))
    return "error: " + j["error"]["kind"].get<std::string>() + ": " + j["error"]["message"].get<std::string>() + "\n";
  std::string out;
  if (j.contains("genus"))
    out += "genus: " + j["genus"].dump() + ", euler: " + j["euler"].dump() + ", d: " + j["d"].dump() + "\n";
  if (j.contains("warnings"))
    for (auto& w : j["warnings"]) out += "warning: " + w.get<std::string>() + "\n";
  if (j.contains("report")) out += report_text(j["report"]);
  if (j.contains("oracle")) out += verdict_text(j["oracle"]);
  if (j.contains("conjugated_generators")) {
    const Int d = j["d"].get<Int>();
    const std::size_t n = j["n"].get<std::size_t>();
    out += "phase fix: " + to_text(element_from_json(j["phase_fix"], d, n)) + "\n";
    for (auto& g : j["conjugated_generators"]) out += "conjugated: " + to_text(element_from_json(g, d, n)) + "\n";
  }
  return out;
}

}  // namespace qstab::io
