#include "commands.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <sstream>

#include "json.hpp"
#include "lorentz/construct.hpp"
#include "lorentz/demo.hpp"
#include "lorentz/embedding.hpp"
#include "lorentz/functionals.hpp"
#include "lorentz/io.hpp"
#include "lorentz/rearrange.hpp"

namespace lorentz::cli {

namespace {

using nlohmann::ordered_json;

// JSON has no infinity: +inf becomes "divergent" (the end is reported beside it).
ordered_json num(double x) {
  if (std::isnan(x)) return nullptr;
  if (std::isinf(x)) return x > 0 ? "divergent" : "-divergent";
  return x;
}

ordered_json breakdown_json(const FunctionalValue& v) {
  ordered_json out = ordered_json::array();
  for (const Contribution& c : v.breakdown) {
    ordered_json entry{{"label", c.label}, {"lo", c.lo}, {"hi", std::isinf(c.hi) ? ordered_json("inf") : ordered_json(c.hi)}};
    if (c.value.finite()) {
      entry["value"] = c.value.value;
    } else {
      entry["value"] = "divergent";
      entry["end"] = to_string(c.value.divergent);
    }
    out.push_back(std::move(entry));
  }
  return out;
}

// "X": value or "divergent" plus "X_end"; every divergence is merged into "end".
struct Report {
  ordered_json j = ordered_json::object();
  ordered_json breakdowns = ordered_json::object();
  DivergentEnd end = DivergentEnd::none;

  void put(const std::string& key, const FunctionalValue& v, bool with_breakdown = true) {
    if (v.finite()) {
      j[key] = v.value;
    } else {
      j[key] = "divergent";
      j[key + "_end"] = to_string(v.divergent);
      end = merge(end, v.divergent);
    }
    if (with_breakdown) breakdowns[key] = breakdown_json(v);
  }
  ordered_json finish() {
    if (end != DivergentEnd::none) j["end"] = to_string(end);
    if (!breakdowns.empty()) j["breakdown"] = breakdowns;
    return j;
  }
};

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InputError("cannot write " + path);
  f << text;
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

// Maps library exceptions onto the exit-code contract.
int guarded(std::ostream& err, const std::function<int()>& body) {
  try {
    return body();
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const RangeError& e) {
    err << "error: " << e.what() << "\n";
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
  }
  return kInputError;
}

StepFunction require_step(const FunctionDocument& doc, const char* what) {
  if (const auto* f = std::get_if<StepFunction>(&doc)) return *f;
  throw InputError(std::string(what) + " needs a step document, got kind \"" + kind_name(doc) + "\"");
}

}  // namespace

std::vector<double> parse_grid(const std::string& spec) {
  const auto bad = [&spec](const std::string& why) {
    return InputError("bad grid \"" + spec + "\": " + why + " (expected log:lo:hi:n)");
  };
  std::vector<std::string> parts;
  std::stringstream ss(spec);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  if (parts.size() != 4 || parts[0] != "log") throw bad("wrong shape");
  double lo = 0.0, hi = 0.0;
  long n = 0;
  try {
    std::size_t used = 0;
    lo = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw bad("lo is not a number");
    hi = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw bad("hi is not a number");
    n = std::stol(parts[3], &used);
    if (used != parts[3].size()) throw bad("n is not an integer");
  } catch (const std::logic_error&) {
    throw bad("unparsable field");
  }
  if (!(lo > 0.0) || !(lo < hi) || !std::isfinite(hi)) throw bad("need 0 < lo < hi < inf");
  if (n < 2 || n > 10000000) throw bad("need 2 <= n <= 1e7");
  std::vector<double> grid(static_cast<std::size_t>(n));
  const double a = std::log(lo);
  const double L = std::log(hi) - a;
  for (long i = 0; i < n; ++i) grid[i] = std::exp(a + L * static_cast<double>(i) / (n - 1));
  grid.front() = lo;
  grid.back() = hi;
  return grid;
}

int cmd_rearrange(const std::string& in_path, const std::string& out_path, std::ostream& out,
                  std::ostream& err) {
  return guarded(err, [&] {
    std::ifstream in(in_path);
    if (!in) throw InputError("cannot open " + in_path);
    const auto samples = read_samples_csv(in);
    emit(serialize(rearrange_samples(samples)), out_path, out);
    return kOk;
  });
}

int cmd_functionals(const std::string& f_path, const std::string& psi_path, Exps ex,
                    std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Exponents e = make_exponents(ex.p, ex.r);
    const FunctionDocument fdoc = read_document(f_path);
    Report rep;
    std::optional<OrliczFunction> psi;
    if (!psi_path.empty()) psi = to_psi(read_document(psi_path));
    if (const auto* f = std::get_if<StepFunction>(&fdoc)) {
      rep.put("J", lorentz_functional(*f, e));
      if (psi) rep.put("M", orlicz_modular(*psi, *f));
    } else if (const auto* g = std::get_if<TailedDecreasingFunction>(&fdoc)) {
      rep.put("J", lorentz_functional(*g, e));
      if (psi) rep.put("M", orlicz_modular(*psi, *g));
    } else {
      throw InputError(std::string("--f needs a step or tailed document, got kind \"") +
                       kind_name(fdoc) + "\"");
    }
    if (psi) rep.put("K", condition3_integral(*psi, e));
    out << dump(rep.finish());
    return kOk;
  });
}

int cmd_construct(const std::string& f_path, Exps ex, const std::string& psi_out,
                  const std::string& report_out, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const Exponents e = make_exponents(ex.p, ex.r);
    const StepFunction f = require_step(read_document(f_path), "construct");
    if (f.empty()) throw InputError("construct needs a nonzero f");
    const ConstructionResult res = construct_psi(f, e);

    Report rep;
    rep.j["exponents"] = {{"p", e.p}, {"r", e.r}, {"q", e.q}};
    rep.j["cushion"] = {{"a", res.cushion.a}, {"b", res.cushion.b}, {"delta", res.cushion.delta}};
    rep.j["window"] = {{"k_min", res.window.k_min}, {"k_max", res.window.k_max},
                       {"guard", res.window.guard}};
    rep.j["J_f"] = num(res.J_f);
    rep.j["J_g0"] = num(res.J_g0);
    rep.j["J_g"] = num(res.J_g);
    rep.put("K", res.K);
    rep.put("M_f", res.M_f, false);
    rep.put("M_g", res.M_g, false);
    rep.put("M_half_g0", res.M_half_g0, false);
    rep.j["identity_K_residual"] = num(res.identity_K_residual);
    rep.j["identity_M_residual"] = num(res.identity_M_residual);
    ordered_json checks = ordered_json::array();
    for (const Diagnostic& d : res.diagnostics) {
      checks.push_back({{"name", d.name}, {"value", num(d.value)}, {"limit", num(d.limit)},
                        {"passed", d.passed}, {"detail", d.detail}});
    }
    rep.j["checks"] = checks;
    rep.j["all_passed"] = res.all_passed();

    const std::string psi_text = serialize(ConstructedPsiDoc{e, res.g});
    if (psi_out.empty()) {
      out << psi_text;
    } else {
      emit(psi_text, psi_out, out);
    }
    if (!report_out.empty()) emit(dump(rep.finish()), report_out, out);
    if (!res.all_passed()) {
      for (const Diagnostic& d : res.diagnostics) {
        if (!d.passed) err << "check failed: " << d.name << " (" << d.detail << ")\n";
      }
      return kViolation;
    }
    return kOk;
  });
}

int cmd_verify(const std::string& f_path, const std::string& psi_path, Exps ex, std::ostream& out,
               std::ostream& err) {
  return guarded(err, [&] {
    const Exponents e = make_exponents(ex.p, ex.r);
    const StepFunction f = require_step(read_document(f_path), "verify");
    const OrliczFunction psi = to_psi(read_document(psi_path));
    const EmbeddingReport r = verify_embedding(f, psi, e);

    Report rep;
    rep.j["J"] = num(r.J);
    rep.put("K", r.K, false);
    rep.put("M", r.M, false);
    rep.j["c8"] = num(r.c8);
    rep.j["c"] = num(r.c);
    rep.j["bound"] = num(r.bound);
    rep.j["S6"] = num(r.S6);
    rep.j["holder"] = num(r.holder);
    rep.j["log_A"] = num(r.log_A);
    rep.j["log_S8"] = num(r.log_S8);
    rep.j["S9"] = num(r.S9);
    ordered_json links = ordered_json::array();
    for (const ChainLink& l : r.links) {
      links.push_back({{"name", l.name}, {"log_lhs", num(l.log_lhs)}, {"log_rhs", num(l.log_rhs)},
                       {"holds", l.holds}});
    }
    rep.j["links"] = links;
    rep.j["holds"] = r.holds;
    rep.j["hypothesis_failed"] = r.hypothesis_failed;
    out << dump(rep.finish());
    if (r.hypothesis_failed) {
      err << "hypothesis fails: K or M diverges\n";
      return kHypothesisFailure;
    }
    return r.holds ? kOk : kViolation;
  });
}

int cmd_demo(double p, const std::vector<double>& qs, const std::vector<double>& eps,
             std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (qs.empty()) throw InputError("demo needs at least one --q");
    const CounterexampleReport r = counterexample_demo(p, qs, eps);
    ordered_json rows = ordered_json::array();
    for (const auto& row : r.rows) {
      ordered_json qcol = ordered_json::array();
      for (double v : row.q_integrals) qcol.push_back(num(v));
      rows.push_back({{"eps", row.eps}, {"p_integral", num(row.p_integral)},
                      {"p_exact", num(row.p_exact)}, {"q_integrals", qcol}});
    }
    ordered_json j{{"p", r.p},
                   {"interval", {0.0, r.upper}},
                   {"q", r.qs},
                   {"rows", rows},
                   {"p_differences", r.p_differences},
                   {"p_differences_shrink", r.p_differences_shrink},
                   {"q_increasing", r.q_increasing},
                   {"q_increments_grow", r.q_increments_grow}};
    out << dump(j);
    return kOk;
  });
}

int cmd_plot(const std::string& f_path, const std::string& psi_path, const std::string& grid_spec,
             const std::string& out_path, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (f_path.empty() == psi_path.empty()) throw InputError("plot needs exactly one of --f / --psi");
    const std::vector<double> grid = parse_grid(grid_spec);
    std::ostringstream csv;
    if (!f_path.empty()) {
      const FunctionDocument doc = read_document(f_path);
      std::function<double(double)> F;
      if (const auto* f = std::get_if<StepFunction>(&doc)) {
        F = [f](double t) { return f->eval(t); };
      } else if (const auto* g = std::get_if<TailedDecreasingFunction>(&doc)) {
        F = [g](double t) { return g->eval(t); };
      } else {
        throw InputError(std::string("--f needs a step or tailed document, got kind \"") +
                         kind_name(doc) + "\"");
      }
      csv << "t,f\n";
      for (double t : grid) csv << format_number(t) << ',' << format_number(F(t)) << '\n';
    } else {
      const FunctionDocument doc = read_document(psi_path);
      const OrliczFunction psi = to_psi(doc);
      if (std::holds_alternative<ConstructedPsiDoc>(doc)) {
        csv << "t,psi,psi_over_t_r\n";
        for (double t : grid) {
          csv << format_number(t) << ',' << format_number(psi.eval(t)) << ','
              << format_number(phi(psi, t)) << '\n';
        }
      } else {
        csv << "t,psi\n";
        for (double t : grid) csv << format_number(t) << ',' << format_number(psi.eval(t)) << '\n';
      }
    }
    emit(csv.str(), out_path, out);
    return kOk;
  });
}

}  // namespace lorentz::cli
