#include "lorentz/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace lorentz {

namespace {

using nlohmann::ordered_json;

double number(const ordered_json& j, const char* key) {
  if (!j.contains(key)) throw InputError(std::string("missing field \"") + key + "\"");
  const auto& v = j.at(key);
  if (!v.is_number()) throw InputError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

std::vector<double> number_array(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_array()) {
    throw InputError(std::string("field \"") + key + "\" must be an array");
  }
  std::vector<double> out;
  for (const auto& v : j.at(key)) {
    if (!v.is_number()) throw InputError(std::string("field \"") + key + "\" must hold numbers");
    out.push_back(v.get<double>());
  }
  return out;
}

const ordered_json& object(const ordered_json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_object()) {
    throw InputError(std::string("field \"") + key + "\" must be an object");
  }
  return j.at(key);
}

std::string type_of(const ordered_json& j) {
  if (!j.contains("type") || !j.at("type").is_string()) {
    throw InputError("missing string field \"type\"");
  }
  return j.at("type").get<std::string>();
}

ordered_json tail_json(const Tail& tail) {
  if (const auto* pt = std::get_if<PowerTail>(&tail)) {
    return {{"type", "power"}, {"shift", pt->shift}, {"coeff", pt->coeff},
            {"exponent", pt->exponent}};
  }
  const auto& dt = std::get<DyadicTail>(tail);
  return {{"type", "dyadic"}, {"anchorT", dt.anchor_t}, {"anchorY", dt.anchor_y},
          {"exponent", dt.exponent}};
}

Tail tail_from(const ordered_json& j) {
  const std::string type = type_of(j);
  if (type == "power") return PowerTail{number(j, "shift"), number(j, "coeff"), number(j, "exponent")};
  if (type == "dyadic") {
    return DyadicTail{number(j, "anchorT"), number(j, "anchorY"), number(j, "exponent")};
  }
  throw InputError("unknown tail type \"" + type + "\"");
}

ordered_json tailed_json(const TailedDecreasingFunction& f) {
  ordered_json core = ordered_json::array();
  for (const CorePiece& piece : f.core()) {
    if (const auto* lin = std::get_if<LinearPiece>(&piece)) {
      core.push_back({{"type", "linear"}, {"lo", lin->lo}, {"hi", lin->hi},
                      {"yLo", lin->y_lo}, {"yHi", lin->y_hi}});
    } else {
      const auto& sp = std::get<ShiftedPowerPiece>(piece);
      core.push_back({{"type", "shifted_power"}, {"lo", sp.lo}, {"hi", sp.hi},
                      {"shift", sp.shift}, {"coeff", sp.coeff}, {"exponent", sp.exponent}});
    }
  }
  return {{"nearZero", tail_json(f.near_zero())}, {"tLo", f.t_lo()}, {"core", core},
          {"far", tail_json(f.far())}};
}

TailedDecreasingFunction tailed_from(const ordered_json& j) {
  std::vector<CorePiece> core;
  if (!j.contains("core") || !j.at("core").is_array()) throw InputError("field \"core\" must be an array");
  for (const auto& pj : j.at("core")) {
    const std::string type = type_of(pj);
    if (type == "linear") {
      core.emplace_back(LinearPiece{number(pj, "lo"), number(pj, "hi"), number(pj, "yLo"),
                                    number(pj, "yHi")});
    } else if (type == "shifted_power") {
      core.emplace_back(ShiftedPowerPiece{number(pj, "lo"), number(pj, "hi"), number(pj, "shift"),
                                          number(pj, "coeff"), number(pj, "exponent")});
    } else {
      throw InputError("unknown core piece type \"" + type + "\"");
    }
  }
  return {tail_from(object(j, "nearZero")), number(j, "tLo"), std::move(core),
          tail_from(object(j, "far"))};
}

ordered_json constructed_json(const ConstructedPsiDoc& doc) {
  const auto& g = doc.g;
  const auto* near = std::get_if<DyadicTail>(&g.near_zero());
  const auto* far = std::get_if<DyadicTail>(&g.far());
  if (!near || !far) throw InputError("constructed Psi needs dyadic tails on g");
  const auto knots = g.knots();
  if (!(TailedDecreasingFunction::from_knots(knots, near->exponent, far->exponent) == g)) {
    throw InputError("constructed Psi needs g to be a knot interpolant");
  }
  ordered_json kj = ordered_json::array();
  for (const auto& [t, y] : knots) kj.push_back({t, y});
  return {{"exponents", {{"p", doc.exponents.p}, {"r", doc.exponents.r}, {"q", doc.exponents.q}}},
          {"g",
           {{"nearZero", {{"shift", 0.0}, {"coeff", near->coeff()}, {"exponent", near->exponent},
                          {"interpolation", "dyadic"}}},
            {"knots", kj},
            {"far", {{"coeff", far->coeff()}, {"exponent", far->exponent},
                     {"interpolation", "dyadic"}}}}}};
}

ConstructedPsiDoc constructed_from(const ordered_json& j) {
  const auto& ej = object(j, "exponents");
  Exponents e = make_exponents(number(ej, "p"), number(ej, "r"));
  if (ej.contains("q")) e.q = number(ej, "q");  // stored q wins: it was computed once
  const auto& gj = object(j, "g");
  const auto& near = object(gj, "nearZero");
  const auto& far = object(gj, "far");
  for (const auto* tj : {&near, &far}) {
    if (tj->contains("interpolation") && tj->at("interpolation") != "dyadic") {
      throw InputError("only \"dyadic\" tail interpolation is supported");
    }
  }
  if (near.contains("shift") && number(near, "shift") != 0.0) {
    throw InputError("constructed g has no near-zero shift");
  }
  if (!gj.contains("knots") || !gj.at("knots").is_array() || gj.at("knots").empty()) {
    throw InputError("field \"knots\" must be a nonempty array");
  }
  std::vector<std::pair<double, double>> knots;
  for (const auto& kj : gj.at("knots")) {
    if (!kj.is_array() || kj.size() != 2 || !kj[0].is_number() || !kj[1].is_number()) {
      throw InputError("each knot must be a [t, y] pair");
    }
    knots.emplace_back(kj[0].get<double>(), kj[1].get<double>());
  }
  return {e, TailedDecreasingFunction::from_knots(knots, number(near, "exponent"),
                                                  number(far, "exponent"))};
}

ordered_json payload(const FunctionDocument& doc) {
  struct Visitor {
    ordered_json operator()(const StepFunction& f) const {
      return {{"breakpoints", f.breakpoints()}, {"values", f.values()}};
    }
    ordered_json operator()(const TwoPowerPsiDoc& d) const {
      return {{"p", d.p}, {"epsilon", d.epsilon}};
    }
    ordered_json operator()(const PiecewisePowerPsi& psi) const {
      ordered_json pieces = ordered_json::array();
      for (const auto& pc : psi.pieces) pieces.push_back({{"coeff", pc.coeff}, {"exponent", pc.exponent}});
      return {{"breaks", psi.breaks}, {"pieces", pieces}};
    }
    ordered_json operator()(const ConstructedPsiDoc& d) const { return constructed_json(d); }
    ordered_json operator()(const TailedDecreasingFunction& f) const { return tailed_json(f); }
  };
  return std::visit(Visitor{}, doc);
}

}  // namespace

const char* kind_name(const FunctionDocument& doc) {
  static constexpr const char* names[] = {"step", "two_power_psi", "piecewise_power_psi",
                                          "constructed_psi", "tailed"};
  return names[doc.index()];
}

std::string serialize(const FunctionDocument& doc) {
  ordered_json j{{"version", kFormatVersion}, {"kind", kind_name(doc)}};
  const ordered_json body = payload(doc);
  for (const auto& [key, value] : body.items()) j[key] = value;
  return j.dump(2) + "\n";
}

FunctionDocument parse_document(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw InputError("document must be a JSON object");
  if (!j.contains("version") || j.at("version") != kFormatVersion) {
    throw InputError("unsupported document version (expected \"1\")");
  }
  if (!j.contains("kind") || !j.at("kind").is_string()) throw InputError("missing field \"kind\"");
  const std::string kind = j.at("kind").get<std::string>();
  try {
    if (kind == "step") return StepFunction(number_array(j, "breakpoints"), number_array(j, "values"));
    if (kind == "two_power_psi") {
      TwoPowerPsiDoc d{number(j, "p"), number(j, "epsilon")};
      OrliczFunction::two_power(d.p, d.epsilon);  // validates
      return d;
    }
    if (kind == "piecewise_power_psi") {
      if (!j.contains("pieces") || !j.at("pieces").is_array()) {
        throw InputError("field \"pieces\" must be an array");
      }
      std::vector<PowerPiece> pieces;
      for (const auto& pj : j.at("pieces")) pieces.push_back({number(pj, "coeff"), number(pj, "exponent")});
      auto psi = OrliczFunction::piecewise_power(number_array(j, "breaks"), std::move(pieces));
      return *psi.as_piecewise();
    }
    if (kind == "constructed_psi") return constructed_from(j);
    if (kind == "tailed") return tailed_from(j);
  } catch (const InputError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw InputError(kind + " document: " + e.what());
  }
  throw InputError("unknown document kind \"" + kind + "\"");
}

FunctionDocument read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parse_document(buf.str());
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

void write_document(const std::string& path, const FunctionDocument& doc) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << serialize(doc);
}

bool is_psi(const FunctionDocument& doc) {
  return std::holds_alternative<TwoPowerPsiDoc>(doc) ||
         std::holds_alternative<PiecewisePowerPsi>(doc) ||
         std::holds_alternative<ConstructedPsiDoc>(doc);
}

OrliczFunction to_psi(const FunctionDocument& doc) {
  if (const auto* d = std::get_if<TwoPowerPsiDoc>(&doc)) return OrliczFunction::two_power(d->p, d->epsilon);
  if (const auto* d = std::get_if<PiecewisePowerPsi>(&doc)) {
    return OrliczFunction::piecewise_power(d->breaks, d->pieces);
  }
  if (const auto* d = std::get_if<ConstructedPsiDoc>(&doc)) {
    return OrliczFunction::constructed(d->g, d->exponents);
  }
  throw InputError(std::string("expected a Psi document, got kind \"") + kind_name(doc) + "\"");
}

std::vector<WeightedSample> read_samples_csv(std::istream& in) {
  std::vector<WeightedSample> out;
  std::string line;
  int lineno = 0;
  auto trim = [](std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return std::string_view{};
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
  };
  auto field = [&](std::string_view s) {
    s = trim(s);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || s.empty()) {
      throw InputError("line " + std::to_string(lineno) + ": cannot parse \"" + std::string(s) +
                       "\" as a number");
    }
    return v;
  };
  while (std::getline(in, line)) {
    ++lineno;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    if (lineno == 1 && row == "value,measure") continue;
    const auto comma = row.find(',');
    if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos) {
      throw InputError("line " + std::to_string(lineno) + ": expected two fields value,measure");
    }
    const double value = field(row.substr(0, comma));
    const double measure = field(row.substr(comma + 1));
    if (!std::isfinite(value)) throw InputError("line " + std::to_string(lineno) + ": value must be finite");
    if (!(measure > 0.0) || !std::isfinite(measure)) {
      throw InputError("line " + std::to_string(lineno) + ": measure must be finite and > 0");
    }
    out.push_back({value, measure});
  }
  return out;
}

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

}  // namespace lorentz
