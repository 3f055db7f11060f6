#include "berk/cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <set>
#include <sstream>

#include "berk/errors.hpp"
#include "berk/text.hpp"

namespace berk::cli {

using Json = nlohmann::ordered_json;

int exit_code_for(const Error& e) {
  switch (e.kind()) {
    case ErrorKind::kParse: return kParseError;
    case ErrorKind::kFactorBoundExceeded: return kFactorBound;
    case ErrorKind::kPrecisionCapExceeded: return kPrecisionCap;
    case ErrorKind::kDomain: return kDomainError;
  }
  return kFailure;
}

namespace {

std::string exact(const Rational& q) { return to_string(q); }

std::size_t threshold_index(const StatReport& r, const Rational& t) {
  auto it = std::find(r.count_thresholds.begin(), r.count_thresholds.end(), t);
  if (it == r.count_thresholds.end()) throw std::logic_error("threshold not tabulated");
  return static_cast<std::size_t>(it - r.count_thresholds.begin());
}

Json field_json(const FieldSpec& spec) {
  Json j;
  j["kind"] = spec.is_padic() ? "padic" : "tadic";
  j["p"] = spec.prime();
  j["base"] = exact(spec.base());
  return j;
}

}  // namespace

std::string report_json(const StatReport& report, const FieldSpec& spec,
                        const std::string& point_text, unsigned digits) {
  Json j;
  j["field"] = field_json(spec);
  j["point"] = point_text;
  j["lmax"] = report.lmax;
  j["checkpoints"] = report.checkpoints;
  Json ts = Json::array();
  for (const auto& t : report.count_thresholds) ts.push_back(exact(t));
  j["thresholds"] = ts;
  Json res = Json::array();
  for (const auto& r : report.residue) res.push_back(exact(r));
  j["residue"] = res;
  Json rels = Json::array();
  for (const auto& r : report.relations) rels.push_back(r.exponents());
  j["relations"] = rels;
  j["nondegenerate"] = report.relations.empty();
  j["verdict"] = to_string(report.verdict);
  if (report.witness) {
    Json w;
    w["relation"] = report.witness->relation.exponents();
    w["poly"] = format_poly(report.witness->poly);
    w["A"] = format_scalar(report.witness->check.a);
    w["absA"] = exact(report.witness->check.abs_a);
    w["ok"] = report.witness->check.ok;
    j["witness"] = w;
  } else {
    j["witness"] = nullptr;
  }
  Json members = Json::array();
  for (const auto& m : report.members) {
    Json jm;
    jm["id"] = m.id;
    jm["poly"] = format_poly(m.poly);
    jm["hits"] = m.hits;
    Json series = Json::array();
    for (const auto& p : m.series) {
      Json jp;
      jp["l"] = p.l;
      jp["S"] = exact(p.s);
      jp["S_decimal"] = format_decimal(p.s, digits);
      Json counts;
      for (std::size_t k = 0; k < p.counts.size(); ++k)
        counts[exact(report.count_thresholds[k])] = p.counts[k];
      jp["count_below"] = counts;
      series.push_back(jp);
    }
    jm["series"] = series;
    members.push_back(jm);
  }
  j["members"] = members;
  return j.dump(2) + "\n";
}

std::string report_csv(const StatReport& report, unsigned digits) {
  std::ostringstream os;
  os << "l,poly_id,S_num,S_den,S_decimal,count_below_1,count_below_1_2\n";
  std::size_t one = threshold_index(report, Rational(1));
  std::size_t half = threshold_index(report, Rational(1, 2));
  for (std::size_t c = 0; c < report.checkpoints.size(); ++c) {
    for (const auto& m : report.members) {
      const SeriesPoint& p = m.series.at(c);
      os << p.l << ',' << m.id << ',' << p.s.get_num().get_str() << ',' << p.s.get_den().get_str()
         << ',' << format_decimal(p.s, digits) << ',' << p.counts[one] << ',' << p.counts[half]
         << '\n';
    }
  }
  return os.str();
}

namespace {

struct Globals {
  std::string field = "tadic";
  unsigned long p = 0;
  std::string base;
  unsigned digits = 12;
  unsigned threads = 1;
  std::string out;
  std::string config;
};

FieldSpec make_field(const Globals& g) {
  if (g.field == "padic") {
    if (g.p == 0) throw DomainError("MissingPrime", "--p is required for the p-adic field");
    return g.base.empty() ? FieldSpec::padic(g.p) : FieldSpec::padic(g.p, parse_rational(g.base));
  }
  if (g.field == "tadic") return g.base.empty() ? FieldSpec::tadic() : FieldSpec::tadic(parse_rational(g.base));
  throw ParseError(1, 1, {"tadic", "padic"}, "unknown field '" + g.field + "'");
}

std::string show(const Rational& q, unsigned digits) {
  return exact(q) + " (" + format_decimal(q, digits) + ")";
}

void write_file(const std::string& path, const std::string& data) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << data;
}

// Points under the p-adic kind must not mention t.
BerkPoint checked_point(const std::string& text, std::optional<std::size_t> nvars, const FieldSpec& spec) {
  BerkPoint z = parse_point(text, nvars);
  if (z.is_type_one())
    for (const auto& c : z.as_type_one().coords) check_member(c, spec);
  else
    for (const auto& c : z.as_polydisc().center) check_member(c, spec);
  return z;
}

Poly checked_poly(const std::string& text, std::optional<std::size_t> nvars, const FieldSpec& spec) {
  Poly f = parse_poly(text, nvars);
  for (const auto& [e, c] : f.terms()) check_member(c, spec);
  return f;
}

// ----------------------------------------------------------- weyl setup

struct WeylSettings {
  std::string point;
  std::int64_t lmax = 100;
  std::string checkpoints;
  std::string thresholds = "1/4,1/2,3/4";
  std::string presets = "mono,diff,scaled,random";
  std::vector<std::string> polys;
  std::uint64_t seed = 1;
  unsigned random_count = 4;
  unsigned long bound = kDefaultFactorBound;
  std::string mode = "exact";
  std::size_t p0 = 8;
  std::size_t cap = 4096;
};

std::string join_csv(const Json& arr) {
  std::string s;
  for (const auto& x : arr) {
    if (!s.empty()) s += ",";
    s += x.is_string() ? x.get<std::string>() : x.dump();
  }
  return s;
}

// Values from the config file apply unless the flag was given explicitly.
void apply_config(const std::string& path, CLI::App& app, Globals& g, WeylSettings& w) {
  std::ifstream in(path);
  if (!in) throw DomainError("ConfigUnreadable", "cannot open config " + path);
  Json cfg;
  try {
    cfg = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(1, static_cast<int>(e.byte), {"JSON document"}, e.what());
  }
  if (!cfg.is_object()) throw ParseError(1, 1, {"JSON object"}, "config must be an object");
  CLI::App* weyl = app.get_subcommand("weyl");
  auto unset = [&](const char* flag) {
    const CLI::Option* opt = app.get_option_no_throw(flag);
    if (opt == nullptr) opt = weyl->get_option(flag);
    return opt->count() == 0;
  };
  try {
    for (const auto& [key, val] : cfg.items()) {
      if (key == "field") {
        if (unset("--field")) g.field = val.get<std::string>();
      } else if (key == "p") {
        if (unset("--p")) g.p = val.get<unsigned long>();
      } else if (key == "base") {
        if (unset("--base")) g.base = val.is_string() ? val.get<std::string>() : val.dump();
      } else if (key == "digits") {
        if (unset("--digits")) g.digits = val.get<unsigned>();
      } else if (key == "threads") {
        if (unset("--threads")) g.threads = val.get<unsigned>();
      } else if (key == "out") {
        if (unset("--out")) g.out = val.get<std::string>();
      } else if (key == "point") {
        if (unset("--z")) w.point = val.get<std::string>();
      } else if (key == "lmax") {
        if (unset("--lmax")) w.lmax = val.get<std::int64_t>();
      } else if (key == "checkpoints") {
        if (unset("--checkpoints")) w.checkpoints = join_csv(val);
      } else if (key == "thresholds") {
        if (unset("--thresholds")) w.thresholds = join_csv(val);
      } else if (key == "bound") {
        if (unset("--bound")) w.bound = val.get<unsigned long>();
      } else if (key == "mode") {
        if (unset("--mode")) w.mode = val.get<std::string>();
      } else if (key == "p0") {
        if (unset("--p0")) w.p0 = val.get<std::size_t>();
      } else if (key == "cap") {
        if (unset("--cap")) w.cap = val.get<std::size_t>();
      } else if (key == "family") {
        if (!val.is_object()) throw ParseError(1, 1, {"object"}, "family must be an object");
        for (const auto& [fk, fv] : val.items()) {
          if (fk == "presets") {
            if (unset("--family")) w.presets = join_csv(fv);
          } else if (fk == "polys") {
            if (unset("--poly")) w.polys = fv.get<std::vector<std::string>>();
          } else if (fk == "seed") {
            if (unset("--seed")) w.seed = fv.get<std::uint64_t>();
          } else if (fk == "random_count") {
            if (unset("--random-count")) w.random_count = fv.get<unsigned>();
          } else {
            throw ParseError(1, 1, {"presets", "polys", "seed", "random_count"},
                             "unknown family key '" + fk + "'");
          }
        }
      } else {
        throw ParseError(1, 1,
                         {"field", "p", "base", "digits", "threads", "out", "point", "lmax",
                          "checkpoints", "thresholds", "family", "bound", "mode", "p0", "cap"},
                         "unknown config key '" + key + "'");
      }
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(1, 1, {}, std::string("bad config value: ") + e.what());
  }
}

int run_weyl(CLI::App& app, Globals& g, WeylSettings& w, std::ostream& out) {
  if (!g.config.empty()) apply_config(g.config, app, g, w);
  FieldSpec spec = make_field(g);
  if (w.point.empty()) throw DomainError("MissingPoint", "--z (or config key point) is required");
  BerkPoint z = checked_point(w.point, std::nullopt, spec);
  if (!z.is_type_one()) throw DomainError("NotInTorus", "the powers experiment needs a type-I point");
  TorusPoint a(z.as_type_one().coords, spec);

  RunOptions opts;
  opts.lmax = w.lmax;
  if (!w.checkpoints.empty()) opts.checkpoints = parse_int_list(w.checkpoints);
  opts.thresholds = parse_rational_list(w.thresholds);
  opts.factor_bound = w.bound;
  opts.threads = std::max(1U, g.threads);
  if (w.mode == "adaptive") {
    opts.mode.adaptive = true;
    opts.mode.initial_precision = w.p0;
    opts.mode.precision_cap = w.cap;
  } else if (w.mode != "exact") {
    throw ParseError(1, 1, {"exact", "adaptive"}, "unknown mode '" + w.mode + "'");
  }

  FamilyOptions fam{false, false, false, 0, w.seed};
  if (!w.presets.empty()) {
    std::string p = w.presets;
    std::stringstream ss(p);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item == "mono") fam.monomials = true;
      else if (item == "diff") fam.differences = true;
      else if (item == "scaled") fam.scaled = true;
      else if (item == "random") fam.random_count = w.random_count;
      else if (item == "none") continue;
      else throw ParseError(1, 1, {"mono", "diff", "scaled", "random", "none"},
                            "unknown family preset '" + item + "'");
    }
  }
  TestFamily family = default_family(a, spec, fam);
  for (std::size_t i = 0; i < w.polys.size(); ++i)
    family.add_normalized("poly_" + std::to_string(i), checked_poly(w.polys[i], a.nvars(), spec), spec);

  StatReport report = convergence_report(a, family, opts, spec);
  std::string json = report_json(report, spec, format_point(z), g.digits);
  if (g.out.empty()) {
    out << json;
  } else {
    write_file(g.out + ".json", json);
    write_file(g.out + ".csv", report_csv(report, g.digits));
    out << "verdict: " << to_string(report.verdict) << "\n";
  }
  return kOk;
}

// ------------------------------------------------------------ stats

struct StatsSettings {
  std::string powers;
  std::string points;
  std::int64_t lmax = 0;
  std::string checkpoints;
  std::vector<std::string> polys;
};

int run_stats(Globals& g, StatsSettings& s, std::ostream& out) {
  FieldSpec spec = make_field(g);
  if (s.polys.empty()) throw DomainError("MissingPolynomial", "at least one --f is required");
  // Each checkpoint l reports the multiset of the first l listed points.
  std::vector<ProjectiveClass> zs;
  if (!s.powers.empty()) {
    if (s.lmax < 1) throw DomainError("InvalidLength", "--lmax must be positive with --powers");
    BerkPoint base = checked_point(s.powers, std::nullopt, spec);
    if (!base.is_type_one()) throw DomainError("UnsupportedPoint", "--powers needs a type-I point");
    std::vector<Scalar> cur = base.as_type_one().coords;
    for (std::int64_t j = 1; j <= s.lmax; ++j) {
      if (j > 1)
        for (std::size_t i = 0; i < cur.size(); ++i) cur[i] = cur[i] * base.as_type_one().coords[i];
      zs.emplace_back(BerkPoint::type_one(cur), spec);
    }
  } else if (!s.points.empty()) {
    std::stringstream ss(s.points);
    std::string item;
    while (std::getline(ss, item, ';'))
      zs.emplace_back(checked_point(item, std::nullopt, spec), spec);
  } else {
    throw DomainError("MissingPoints", "one of --powers or --points is required");
  }
  if (zs.empty()) throw DomainError("EmptyMultiset", "no points given");
  const std::size_t nvars = zs.front().nvars();
  std::vector<std::int64_t> cps = s.checkpoints.empty() ? std::vector<std::int64_t>{static_cast<std::int64_t>(zs.size())}
                                                        : parse_int_list(s.checkpoints);
  for (std::size_t i = 0; i < cps.size(); ++i)
    if (cps[i] < 1 || cps[i] > static_cast<std::int64_t>(zs.size()) || (i > 0 && cps[i] <= cps[i - 1]))
      throw DomainError("InvalidCheckpoints", "checkpoints must increase within [1, |Z|]");

  std::ostringstream os;
  os << "l,poly_id,S_num,S_den,S_decimal,count_below_1,count_below_1_2\n";
  std::vector<Poly> fs;
  for (const auto& text : s.polys) fs.push_back(checked_poly(text, nvars, spec));
  for (std::size_t k = 0; k < fs.size(); ++k) {
    if (fs[k].is_zero() || !is_homogeneous(fs[k]) || height(fs[k], spec) != 1)
      throw DomainError("NotNormalized", "--f must be a normalized homogeneous polynomial");
  }
  std::vector<std::vector<Rational>> lambdas(fs.size());
  for (std::size_t k = 0; k < fs.size(); ++k)
    for (const auto& z : zs) lambdas[k].push_back(lambda(fs[k], z, spec));
  for (auto l : cps) {
    for (std::size_t k = 0; k < fs.size(); ++k) {
      Rational sum(0);
      std::uint64_t below1 = 0;
      std::uint64_t below_half = 0;
      for (std::int64_t j = 0; j < l; ++j) {
        const Rational& lam = lambdas[k][static_cast<std::size_t>(j)];
        sum += lam;
        below1 += lam < 1 ? 1 : 0;
        below_half += lam < Rational(1, 2) ? 1 : 0;
      }
      Rational avg = sum / Rational(Integer(l));
      os << l << ",f" << k << ',' << avg.get_num().get_str() << ',' << avg.get_den().get_str() << ','
         << format_decimal(avg, g.digits) << ',' << below1 << ',' << below_half << '\n';
    }
  }
  if (g.out.empty())
    out << os.str();
  else
    write_file(g.out + ".csv", os.str());
  return kOk;
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact non-archimedean seminorms, reductions and equidistribution statistics", "berk"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--field", g.field, "tadic (Q(t), residue field Q) or padic (Q, residue field F_p)");
  app.add_option("--p", g.p, "prime for the p-adic field");
  app.add_option("--base", g.base, "base c > 1 with |x| = c^-v(x)");
  app.add_option("--digits", g.digits, "fractional digits of decimal renderings");
  app.add_option("--threads", g.threads, "worker threads for the powers experiment");
  app.add_option("--out", g.out, "output path prefix");
  app.add_option("--config", g.config, "JSON config file (weyl)");

  std::string f_text, z_text, rel_text, coords_text, hits_text;
  std::int64_t jmax = 100;
  unsigned long bound = kDefaultFactorBound;

  auto* height_cmd = app.add_subcommand("height", "height H(f)");
  height_cmd->add_option("--f", f_text, "polynomial")->required();

  auto* semi_cmd = app.add_subcommand("seminorm", "[f] at a point");
  semi_cmd->add_option("--f", f_text, "polynomial")->required();
  semi_cmd->add_option("--z", z_text, "point")->required();

  auto* lambda_cmd = app.add_subcommand("lambda", "lambda_f at a projective point");
  lambda_cmd->add_option("--f", f_text, "homogeneous polynomial")->required();
  lambda_cmd->add_option("--z", z_text, "point")->required();

  auto* reduce_cmd = app.add_subcommand("reduce", "reduction of a point or polynomial");
  reduce_cmd->add_option("--z", z_text, "point");
  reduce_cmd->add_option("--f", f_text, "polynomial of height <= 1");

  auto* multdep_cmd = app.add_subcommand("multdep", "multiplicative relations of residue torus coordinates");
  multdep_cmd->add_option("coords", coords_text, "comma list, e.g. 2,4")->required();
  multdep_cmd->add_option("--bound", bound, "trial division bound");
  multdep_cmd->add_option("--hits", hits_text, "residue polynomial W; list j <= jmax with a^j in V(W)");
  multdep_cmd->add_option("--jmax", jmax, "orbit length for --hits");

  auto* witness_cmd = app.add_subcommand("witness", "witness polynomial of a relation");
  witness_cmd->add_option("--rel", rel_text, "relation, e.g. 2,-1")->required();
  witness_cmd->add_option("--z", z_text, "torus point to check |A| < 1 at");

  WeylSettings w;
  auto* weyl_cmd = app.add_subcommand("weyl", "powers experiment for a torus point");
  weyl_cmd->add_option("--z", w.point, "torus point, e.g. (1 : 2+t : 4)");
  weyl_cmd->add_option("--lmax", w.lmax, "largest l");
  weyl_cmd->add_option("--checkpoints", w.checkpoints, "comma list of l values");
  weyl_cmd->add_option("--thresholds", w.thresholds, "comma list of rationals in (0,1)");
  weyl_cmd->add_option("--family", w.presets, "presets: mono,diff,scaled,random,none");
  weyl_cmd->add_option("--poly", w.polys, "extra homogeneous test polynomial (repeatable)");
  weyl_cmd->add_option("--seed", w.seed, "generator seed for random forms");
  weyl_cmd->add_option("--random-count", w.random_count, "number of random forms");
  weyl_cmd->add_option("--bound", w.bound, "trial division bound");
  weyl_cmd->add_option("--mode", w.mode, "exact or adaptive");
  weyl_cmd->add_option("--p0", w.p0, "initial truncation precision (adaptive)");
  weyl_cmd->add_option("--cap", w.cap, "truncation precision cap (adaptive)");

  StatsSettings st;
  auto* stats_cmd = app.add_subcommand("stats", "S_l and threshold counts for a multiset");
  stats_cmd->add_option("--powers", st.powers, "base point; Z_l = {a, ..., a^l}");
  stats_cmd->add_option("--lmax", st.lmax, "number of powers");
  stats_cmd->add_option("--points", st.points, "explicit points separated by ';'");
  stats_cmd->add_option("--checkpoints", st.checkpoints, "comma list of prefix lengths");
  stats_cmd->add_option("--f", st.polys, "normalized homogeneous polynomial (repeatable)")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  try {
    if (*height_cmd) {
      FieldSpec spec = make_field(g);
      out << "height: " << show(height(checked_poly(f_text, std::nullopt, spec), spec), g.digits) << "\n";
    } else if (*semi_cmd || *lambda_cmd) {
      FieldSpec spec = make_field(g);
      BerkPoint z = checked_point(z_text, std::nullopt, spec);
      Poly f = checked_poly(f_text, z.nvars(), spec);
      if (*semi_cmd) {
        out << "seminorm: " << show(seminorm(z, f, spec), g.digits) << "\n";
      } else {
        out << "lambda: " << show(lambda(f, ProjectiveClass(z, spec), spec), g.digits) << "\n";
      }
    } else if (*reduce_cmd) {
      FieldSpec spec = make_field(g);
      if (z_text.empty() == f_text.empty())
        throw DomainError("MissingArgument", "reduce takes exactly one of --z or --f");
      if (!z_text.empty()) {
        ReducedTarget r = reduce_point(ProjectiveClass(checked_point(z_text, std::nullopt, spec), spec), spec);
        if (std::holds_alternative<GenericPoint>(r))
          out << "reduction: GENERIC\n";
        else
          out << "reduction: " << format_residue_point(std::get<ResidueProjPoint>(r)) << "\n";
      } else {
        out << "reduction: " << format_residue_poly(reduce_poly(checked_poly(f_text, std::nullopt, spec), spec))
            << "\n";
      }
    } else if (*multdep_cmd) {
      FieldSpec spec = make_field(g);
      ResidueTorusPoint a(parse_rational_list(coords_text), ResidueField::of(spec));
      auto basis = relation_basis(a, bound);
      if (basis.empty()) out << "independent\n";
      for (const auto& r : basis) {
        out << "relation: ";
        for (std::size_t i = 0; i < r.exponents().size(); ++i) out << (i ? "," : "") << r.exponents()[i];
        out << "\n";
      }
      out << "nondegenerate: " << (basis.empty() ? "true" : "false") << "\n";
      if (!hits_text.empty()) {
        Poly wpoly = parse_poly(hits_text, a.dim() + 1);
        ResiduePoly wt(a.dim() + 1, a.field());
        for (const auto& [e, c] : wpoly.terms()) wt.add_term(e, c.constant_value());
        auto hits = orbit_hits(a, Hypersurface(wt), jmax);
        out << "hits:";
        for (auto j : hits) out << " " << j;
        out << "\n";
      }
    } else if (*witness_cmd) {
      FieldSpec spec = make_field(g);
      auto exps = parse_int_list(rel_text);
      // Every exponent vector is a relation of the neutral point.
      ResidueTorusPoint neutral(std::vector<ResidueScalar>(exps.size(), Rational(1)), ResidueField::of(spec));
      Poly wpoly = witness_polynomial(Relation::certify(exps, neutral));
      out << "witness: " << format_poly(wpoly) << "\n";
      if (!z_text.empty()) {
        BerkPoint z = checked_point(z_text, exps.size() + 1, spec);
        if (!z.is_type_one()) throw DomainError("NotInTorus", "--z must be a type-I point");
        TorusPoint a(z.as_type_one().coords, spec);
        ResidueTorusPoint res = a.residue(spec);
        WitnessCheck chk = witness_check(a, Relation::certify(exps, res), spec);
        out << "A: " << format_scalar(chk.a) << "\n";
        out << "absA: " << exact(chk.abs_a) << "\n";
        out << "ok: " << (chk.ok ? "true" : "false") << "\n";
      }
    } else if (*weyl_cmd) {
      return run_weyl(app, g, w, out);
    } else if (*stats_cmd) {
      return run_stats(g, st, out);
    }
  } catch (const Error& e) {
    err << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}

}  // namespace berk::cli
