#include "gammahc/job.hpp"

#include <json.hpp>
#include <random>
#include <regex>
#include <sstream>

#include "gammahc/bar_oracle.hpp"
#include "gammahc/crystalline.hpp"
#include "gammahc/error.hpp"
#include "gammahc/gamma_forms.hpp"

namespace gammahc {

using json = nlohmann::ordered_json;

namespace {

std::string strip(const std::string& s, std::size_t* lead = nullptr) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) {
    if (lead) *lead = s.size();
    return "";
  }
  const auto b = s.find_last_not_of(" \t\r");
  if (lead) *lead = a;
  return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(std::size_t line, std::size_t column, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + msg);
}

int parse_int(const std::string& s, std::size_t line, std::size_t column, const std::string& what) {
  static const std::regex digits("[0-9]{1,9}");
  if (!std::regex_match(s, digits)) fail(line, column, what + " must be a non-negative integer, got '" + s + "'");
  return std::stoi(s);
}

// the message of a ParseError without the leading name
std::string bare(const Error& e) {
  const std::string w = e.what();
  const std::string prefix = e.name() + ": ";
  return w.rfind(prefix, 0) == 0 ? w.substr(prefix.size()) : w;
}

json group_json(const HomologyGroup& g) {
  json t = json::array();
  for (const auto& d : g.invariant_factors) {
    if (d.fits_slong_p()) {
      t.push_back(d.get_si());
    } else {
      t.push_back(d.get_str());
    }
  }
  return json{{"free_rank", g.free_rank}, {"torsion", t}};
}

json degrees_json(const std::vector<HomologyGroup>& groups) {
  json out = json::array();
  for (std::size_t n = 0; n < groups.size(); ++n) {
    json e{{"n", n}};
    e.update(group_json(groups[n]));
    out.push_back(e);
  }
  return out;
}

json layers_json(const FilteredGroups& f) {
  json out = json::array();
  for (std::size_t n = 0; n < f.total.size(); ++n) {
    json layers = json::array();
    for (const auto& [p, g] : f.layers[n]) {
      json e{{"p", p}};
      e.update(group_json(g));
      layers.push_back(e);
    }
    out.push_back(json{{"n", n}, {"total", group_json(f.total[n])}, {"layers", layers}});
  }
  return out;
}

Integer torsion_order(const HomologyGroup& g) {
  Integer o = 1;
  for (const auto& d : g.invariant_factors) o *= d;
  return o;
}

bool is_flat(const Presentation& p) {
  for (auto r : p.constant_relations()) {
    if (p.ring().normalize(p.relations()[r].begin()->second) != 0) return false;
  }
  return true;
}

struct Context {
  const JobSpec& job;
  GroundRing ring;
  Presentation presentation;
};

Context make_context(const JobSpec& job) {
  auto ring = GroundRing::parse(job.ring);
  return Context{job, ring, Presentation::parse(ring, job.variables, job.relations)};
}

GammaFormsComplex forms(const Context& c) {
  return build_gamma_forms(c.presentation, c.job.n_max, c.job.poly_bound);
}

int run_hh(const Context& c, json& result) {
  result["degrees"] = degrees_json(hh_assemble(forms(c), c.job.n_max));
  return 0;
}

int run_hc(const Context& c, json& result) {
  result["degrees"] = degrees_json(hc_assemble(forms(c), c.job.n_max).total);
  return 0;
}

int run_layers(const Context& c, json& result) {
  const auto g = forms(c);
  result["hh"] = layers_json(filtration_layers(g.complex, c.job.n_max, TotalMode::Hochschild));
  result["hc"] = layers_json(hc_assemble(g, c.job.n_max));
  return 0;
}

int run_oracle(const Context& c, json& result) {
  const auto a = FiniteAlgebra::from_presentation(c.presentation);
  result["rank"] = a.rank();
  result["hh"] = degrees_json(hh_oracle(a, c.job.n_max));
  result["hc"] = degrees_json(hc_oracle(a, c.job.n_max));
  return 0;
}

int run_compare(const Context& c, json& result) {
  const int n_max = c.job.n_max;
  const auto g = forms(c);
  const auto hh = hh_assemble(g, n_max);
  const auto hc = hc_assemble(g, n_max);
  const Envelope e(c.presentation);
  const auto crys = hodge_hh(e, n_max);
  std::optional<FilteredGroups> crys_hc;
  if (e.num_variables() <= 2) crys_hc = hc_layers_small(e, n_max);
  std::optional<std::vector<HomologyGroup>> ohh, ohc;
  if (is_flat(c.presentation)) {
    const auto a = FiniteAlgebra::from_presentation(c.presentation);
    ohh = hh_oracle(a, n_max);
    ohc = hc_oracle(a, n_max);
  } else {
    result["oracle_skipped"] = "A is not free over the ground ring";
  }
  if (!crys_hc) result["crystalline_hc_skipped"] = "more than two variables";
  bool all = true;
  json table = json::array();
  for (int n = 0; n <= n_max; ++n) {
    json hh_row{{"forms", group_json(hh[n])}, {"crystalline", group_json(crys.total[n])}};
    bool hh_ok = hh[n] == crys.total[n];
    hh_row["oracle"] = ohh ? group_json((*ohh)[n]) : json(nullptr);
    if (ohh) hh_ok = hh_ok && hh[n] == (*ohh)[n];
    hh_row["agree"] = hh_ok;

    json hc_row{{"forms", group_json(hc.total[n])}};
    bool hc_ok = true;
    if (crys_hc) {
      // the layers only determine the total up to extensions
      std::size_t rank = 0;
      Integer order = 1;
      for (const auto& [p, l] : crys_hc->layers[n]) {
        rank += l.free_rank;
        order *= torsion_order(l);
      }
      hc_row["crystalline_layers"] = group_json(crys_hc->total[n]);
      hc_ok = rank == hc.total[n].free_rank && order == torsion_order(hc.total[n]);
    } else {
      hc_row["crystalline_layers"] = nullptr;
    }
    hc_row["oracle"] = ohc ? group_json((*ohc)[n]) : json(nullptr);
    if (ohc) hc_ok = hc_ok && hc.total[n] == (*ohc)[n];
    hc_row["agree"] = hc_ok;
    all = all && hh_ok && hc_ok;
    table.push_back(json{{"n", n}, {"hh", hh_row}, {"hc", hc_row}});
  }
  result["degrees"] = table;
  result["all_agree"] = all;
  return all ? 0 : 1;
}

int run_witness(const Context& c, const std::string& args, json& result) {
  static const std::regex arg("\\s*p\\s*=\\s*([0-9]{1,6})\\s*");
  std::smatch m;
  if (!std::regex_match(args, m, arg)) throw ParseError("witness24 expects p=<int>, got '" + args + "'");
  const auto r = witness_nondegeneracy(c.ring, std::stoi(m[1]));
  result["p"] = r.p;
  result["gamma"] = r.gamma;
  result["beta"] = r.beta;
  result["cycle"] = r.cycle;
  result["boundary"] = r.boundary;
  result["delta_beta_is_minus_p_gamma"] = r.delta_beta_is_minus_p_gamma;
  return r.cycle && !r.boundary && r.delta_beta_is_minus_p_gamma ? 0 : 1;
}

Element random_element(std::mt19937_64& rng, const GammaFormsComplex& g, int hdeg) {
  std::vector<const Monomial*> pool;
  for (const auto& [s, b] : g.basis) {
    if (s.first + s.second != hdeg) continue;
    for (const auto& m : b) pool.push_back(&m);
  }
  Element e;
  if (pool.empty()) return e;
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> coef(-3, 3);
  for (int t = 0; t < 3; ++t) add_term(e, *pool[pick(rng)], coef(rng), g.algebra.ring());
  return e;
}

int run_selftest(const Context& c, std::uint64_t seed, json& result) {
  json checks;
  bool all = true;
  auto record = [&](const std::string& name, bool ok, std::size_t cases, const std::string& detail = "") {
    json e{{"passed", ok}, {"cases", cases}};
    if (!detail.empty()) e["detail"] = detail;
    checks[name] = e;
    all = all && ok;
  };
  const auto g = forms(c);
  const auto v = validate(g.complex);
  record("forms_complex_identities", v.ok, v.checks, v.failure);

  std::mt19937_64 rng(seed);
  const auto& alg = g.algebra;
  const auto& k = alg.ring();
  const int top = g.n_max + 1;
  std::uniform_int_distribution<int> deg(0, top);
  std::size_t cases = 0;
  bool laws = true;
  std::string failure;
  for (int t = 0; t < 100 && laws; ++t) {
    const int da = deg(rng), db = deg(rng);
    const Element a = random_element(rng, g, da), b = random_element(rng, g, db);
    ++cases;
    const Element ab = mul(alg, a, b);
    if (ab != scale(mul(alg, b, a), (da * db) % 2 ? -1 : 1, k)) {
      laws = false;
      failure = "graded commutativity";
    }
    for (const auto* der : {&g.delta, &g.d}) {
      const Element lhs = derive(alg, *der, ab);
      const Element rhs = add(mul(alg, derive(alg, *der, a), b), scale(mul(alg, a, derive(alg, *der, b)), da % 2 ? -1 : 1, k), k);
      if (lhs != rhs) {
        laws = false;
        failure = "Leibniz rule";
      }
      if (!derive(alg, *der, derive(alg, *der, a)).empty()) {
        laws = false;
        failure = "square of a derivation";
      }
    }
    if (!add(derive(alg, g.delta, derive(alg, g.d, a)), derive(alg, g.d, derive(alg, g.delta, a)), k).empty()) {
      laws = false;
      failure = "delta d + d delta";
    }
  }
  record("forms_algebra_laws", laws, cases, failure);

  if (c.presentation.is_quasi_monic()) {
    const Envelope e(c.presentation);
    std::size_t words = 0;
    bool ok = true;
    for (std::uint32_t w = 0; w <= 2; ++w) {
      for (std::uint32_t j = 0; j <= e.num_variables(); ++j) {
        for (const auto& word : e.words(w, j)) {
          ++words;
          ok = ok && dbar(e, dbar(e, CrystalElement{{word, Scalar(1)}})).empty();
        }
      }
    }
    record("crystalline_dbar_squared", ok, words);
  }
  if (is_flat(c.presentation)) {
    const auto o = validate(cyclic_mixed(FiniteAlgebra::from_presentation(c.presentation), c.job.n_max));
    record("oracle_complex_identities", o.ok, o.checks, o.failure);
  }
  result["seed"] = seed;
  result["checks"] = checks;
  result["passed"] = all;
  return all ? 0 : 1;
}

}  // namespace

JobSpec parse_job(const std::string& text) {
  JobSpec job;
  bool saw_ring = false, saw_vars = false, saw_nmax = false;
  struct PendingRelation {
    std::string text;
    std::size_t line, column;
  };
  std::vector<PendingRelation> rels;
  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::size_t lead = 0;
    const std::string line = strip(raw, &lead);
    if (line.empty()) continue;
    const auto sp = line.find_first_of(" \t");
    const std::string key = line.substr(0, sp);
    std::size_t rest_lead = 0;
    const std::string rest = sp == std::string::npos ? "" : strip(line.substr(sp), &rest_lead);
    const std::size_t rest_col = lead + (sp == std::string::npos ? line.size() : sp + rest_lead) + 1;
    auto once = [&](bool& seen) {
      if (seen) fail(line_no, lead + 1, "'" + key + "' given twice");
      seen = true;
    };
    if (key == "ring") {
      once(saw_ring);
      try {
        GroundRing::parse(rest);
      } catch (const Error& e) {
        fail(line_no, rest_col, bare(e));
      }
      job.ring = rest;
    } else if (key == "vars") {
      once(saw_vars);
      static const std::regex ident("[A-Za-z_][A-Za-z0-9_]*");
      std::istringstream vs(rest);
      std::string v;
      while (vs >> v) {
        if (!std::regex_match(v, ident)) fail(line_no, rest_col + rest.find(v), "bad variable name '" + v + "'");
        if (std::find(job.variables.begin(), job.variables.end(), v) != job.variables.end()) {
          fail(line_no, rest_col + rest.find(v), "variable '" + v + "' repeated");
        }
        job.variables.push_back(v);
      }
    } else if (key == "rel") {
      if (rest.empty()) fail(line_no, rest_col, "empty relation");
      rels.push_back({rest, line_no, rest_col});
    } else if (key == "nmax") {
      once(saw_nmax);
      job.n_max = parse_int(rest, line_no, rest_col, "nmax");
    } else if (key == "bound") {
      job.poly_bound = parse_int(rest, line_no, rest_col, "bound");
    } else if (key == "cmd") {
      if (rest.empty()) fail(line_no, rest_col, "empty command");
      job.command = rest;
    } else {
      fail(line_no, lead + 1, "unknown keyword '" + key + "' (expected ring, vars, rel, nmax, bound or cmd)");
    }
  }
  static const std::regex column_msg("column ([0-9]+): (.*)");
  for (const auto& r : rels) {
    try {
      parse_polynomial(r.text, job.variables);
    } catch (const ParseError& e) {
      const std::string msg = bare(e);
      std::smatch m;
      if (std::regex_match(msg, m, column_msg)) fail(r.line, r.column + std::stoul(m[1]) - 1, m[2]);
      fail(r.line, r.column, msg);
    }
    job.relations.push_back(r.text);
  }
  const auto p = Presentation::parse(GroundRing::parse(job.ring), job.variables, job.relations);
  if (!p.is_quasi_monic()) {
    job.warnings.push_back("NonQuasiMonicWarning: " + p.to_string() +
                           " has no unit leading powers; only commands with an explicit bound can run");
  }
  return job;
}

JobResult run_job(const JobSpec& job, std::uint64_t seed) {
  json out;
  out["job"] = json{{"ring", job.ring},     {"vars", job.variables}, {"relations", job.relations},
                    {"nmax", job.n_max},    {"bound", job.poly_bound ? json(*job.poly_bound) : json(nullptr)},
                    {"command", job.command}};
  out["warnings"] = job.warnings;
  json result = json::object();
  int code = 0;
  try {
    const auto sp = job.command.find(' ');
    const std::string cmd = job.command.substr(0, sp);
    const std::string args = sp == std::string::npos ? "" : job.command.substr(sp + 1);
    if (job.n_max < 0) throw DimensionMismatch("nmax must be non-negative");
    const Context c = make_context(job);
    if (cmd == "hh") {
      code = run_hh(c, result);
    } else if (cmd == "hc") {
      code = run_hc(c, result);
    } else if (cmd == "layers") {
      code = run_layers(c, result);
    } else if (cmd == "oracle") {
      code = run_oracle(c, result);
    } else if (cmd == "compare") {
      code = run_compare(c, result);
    } else if (cmd == "witness24") {
      code = run_witness(c, args, result);
    } else if (cmd == "selftest") {
      code = run_selftest(c, seed, result);
    } else {
      throw ParseError("unknown command '" + cmd + "'");
    }
    out["result"] = result;
    out["errors"] = json::object();
  } catch (const Error& e) {
    out["result"] = nullptr;
    out["errors"] = json{{"name", e.name()}, {"message", bare(e)}};
    code = 2;
  }
  out["exit_code"] = code;
  return JobResult{out.dump(2) + "\n", code};
}

JobResult run_text(const std::string& text, const std::string& command, int n_max, std::uint64_t seed) {
  JobSpec job;
  try {
    job = parse_job(text);
  } catch (const Error& e) {
    json out{{"result", nullptr}, {"errors", {{"name", e.name()}, {"message", bare(e)}}}, {"exit_code", 2}};
    return JobResult{out.dump(2) + "\n", 2};
  }
  if (!command.empty()) job.command = command;
  if (n_max >= 0) job.n_max = n_max;
  return run_job(job, seed);
}

}  // namespace gammahc
