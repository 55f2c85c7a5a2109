#pragma once

#include <algorithm>
#include <charconv>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "ruledmod/report.hpp"

namespace ruledmod {

// Command-line front end. Commands: surface-info, delta, pairing, walls,
// chambers, exists, construct, dim, report. All rationals are read and
// written as exact "p/q" or integer strings; identical requests produce
// byte-identical output. Exit statuses: 0 computed, 2 invalid input,
// 3 hypothesis failure (the message names the failed hypothesis).
struct CliResult {
  int status = 0;
  std::string out;
  std::string err;
};

namespace cli_detail {

using nlohmann::json;

inline long long parse_int(const std::string& text, const std::string& what) {
  long long out = 0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw input_error("malformed " + what + ": '" + text + "'");
  }
  return out;
}

// "a,b" in the (C0, f) basis.
inline DivClass parse_xi(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) {
    throw input_error("malformed class '" + text + "': expected 'a,b' in the (C0, f) basis");
  }
  return {Rational(parse_int(text.substr(0, comma), "class coordinate")),
          Rational(parse_int(text.substr(comma + 1), "class coordinate"))};
}

inline json div_json(const DivClass& d) {
  if (!d.is_integral()) return json::array({d.a.str(), d.b.str()});
  return json::array({d.a.num(), d.b.num()});
}

inline json surface_json(const RuledSurface& s) {
  return {{"genus", s.genus}, {"invariant", s.invariant}};
}

inline json vector_json(const ChernVector& e) {
  return {{"r", e.r}, {"xi", div_json(e.xi)}, {"chi", e.chi}};
}

inline json interval_json(const RayInterval& v) {
  json out = {{"lo", v.lo.str()}, {"lo_closed", v.lo_closed}, {"hi_closed", v.hi_closed}};
  out["hi"] = v.hi ? json(v.hi->str()) : json(nullptr);
  return out;
}

inline json wall_json(const Wall& w) {
  json witnesses = json::array();
  for (const WallWitness& wit : w.witnesses) {
    witnesses.push_back({{"r1", wit.r1},
                         {"xi1", div_json(wit.xi1)},
                         {"chi_min", wit.chi_min},
                         {"chi_max", wit.chi_max}});
  }
  return {{"x", w.x.str()}, {"zeta", div_json(w.zeta)}, {"witnesses", witnesses}};
}

inline json walls_json(const std::vector<Wall>& walls) {
  json out = json::array();
  for (const Wall& w : walls) out.push_back(wall_json(w));
  return out;
}

inline json flag_json(const Flag& f) { return {{"set", f.set}, {"note", f.note}}; }

inline std::string render_walls_text(const ChernVector& e, const RayInterval& range,
                                     const std::vector<Wall>& walls) {
  std::ostringstream os;
  os << "numerical walls of e = " << e.str() << " on " << range.str() << ":\n";
  if (walls.empty()) os << "  none\n";
  for (const Wall& w : walls) {
    os << "  x = " << w.x.str() << "  zeta = " << w.zeta.str() << "\n";
    for (const WallWitness& wit : w.witnesses) {
      os << "    witness r1 = " << wit.r1 << ", xi1 = " << wit.xi1.str() << ", chi in ["
         << wit.chi_min << ", " << wit.chi_max << "]\n";
    }
  }
  return os.str();
}

inline std::string render_chambers_text(const ChamberDecomposition& d) {
  std::ostringstream os;
  os << "range " << d.range.str() << "\n";
  os << "walls:";
  if (d.walls.empty()) os << " none";
  for (const Wall& w : d.walls) os << " " << w.x.str();
  os << "\nchambers:";
  if (d.chambers.empty()) os << " none";
  for (std::size_t i = 0; i < d.chambers.size(); ++i) {
    os << (i == 0 ? " " : ", ") << d.chambers[i].str();
  }
  os << "\n";
  return os.str();
}

inline std::string render_exists_text(const ExistsResult& res) {
  std::ostringstream os;
  os << "exists: " << (res.exists ? "true" : "false");
  if (res.x0) os << " (x0 = " << res.x0->str() << ")";
  os << "\n" << res.reason << "\n";
  if (res.twist != 0) {
    os << "normalized by twist m = " << res.twist << " (by C0)\n";
  }
  if (!res.note.empty()) os << "note: " << res.note << "\n";
  return os.str();
}

inline json exists_json(const ExistsResult& res) {
  json out = {{"exists", res.exists},
              {"delta", res.delta.str()},
              {"r1", res.fiber_rank},
              {"twist", res.twist},
              {"reason", res.reason}};
  if (res.x0) out["x0"] = res.x0->str();
  if (!res.note.empty()) out["note"] = res.note;
  return out;
}

inline std::string render_report_text(const Report& rep) {
  std::ostringstream os;
  const RuledSurface& s = rep.surface;
  os << "== moduli report ==\n";
  os << "surface: g = " << s.genus << ", e = " << s.invariant << "; chi(O_X) = " << s.chi_O()
     << "; K_X = " << canonical(s).str() << "\n";
  os << "vector: " << rep.vector.str() << "\n";
  if (rep.twist != 0) {
    os << "normalized: " << rep.normalized.str() << " (twist m = " << rep.twist << " by C0)\n";
  } else {
    os << "normalized: unchanged (twist m = 0)\n";
  }
  os << "Delta(e) = " << rep.delta.str() << "\n";
  os << "gcd(r, xi, chi) = " << rep.gcd << "\n";
  if (rep.x) os << "query: x = " << rep.x->str() << " " << rep.position << "\n";
  if (rep.query) os << "query: range " << rep.query->str() << "\n";
  if (rep.x0) os << "x0 = " << rep.x0->str() << "\n";
  os << "walls (ample segment):";
  if (rep.decomposition.walls.empty()) os << " none";
  for (const Wall& w : rep.decomposition.walls) os << " " << w.x.str();
  os << "\nchambers (ample segment):";
  for (std::size_t i = 0; i < rep.decomposition.chambers.size(); ++i) {
    os << (i == 0 ? " " : ", ") << rep.decomposition.chambers[i].str();
  }
  os << "\n";
  if (rep.exists.has_value()) {
    os << "exists at x = " << rep.x->str() << ": " << (*rep.exists ? "true" : "false") << "\n";
    os << "  " << rep.exists_reason << "\n";
  }
  if (!rep.segments.empty()) {
    os << "existence by segment:\n";
    for (const SegmentVerdict& seg : rep.segments) {
      if (seg.is_wall) {
        os << "  x = " << seg.where.lo.str();
      } else {
        os << "  " << seg.where.str();
      }
      os << ": " << (seg.exists ? "non-empty" : "empty") << "\n";
    }
    if (rep.exists_on) {
      os << "  => exists on " << rep.exists_on->str() << "\n";
    } else {
      os << "  => exists nowhere in the range\n";
    }
  }
  if (!rep.existence_note.empty()) os << "existence note: " << rep.existence_note << "\n";
  if (rep.dim_stack) {
    os << "dim_stack = " << rep.dim_stack->str() << "\n";
    os << "dim_coarse = " << rep.dim_coarse->str()
       << " (stable locus; stack dimension + 1 convention)\n";
  } else {
    os << "dim: " << rep.dim_note << "\n";
  }
  os << "non-locally-free locus codimension = " << rep.non_locally_free_codim << "\n";
  auto flag_line = [&](const char* name, const Flag& f) {
    os << "  " << name << ": " << (f.set ? "yes" : "no") << " [" << f.note << "]\n";
  };
  os << "flags:\n";
  flag_line("irreducible", rep.irreducible);
  flag_line("generic member mu-stable and locally free", rep.generically_stable_locally_free);
  flag_line("generic fiber restriction rigid", rep.fiber_restriction_rigid);
  flag_line("fine smooth projective coarse space", rep.fine_smooth_projective);
  if (rep.construction) {
    const ExtensionData& c = *rep.construction;
    os << "construction: 0 -> F1(C0) -> E -> F2 -> 0 with (r1, d1, r2, d2) = (" << c.r1 << ", "
       << c.d1 << ", " << c.r2 << ", " << c.d2 << "), x0 = " << c.x0.str() << "\n";
  }
  for (const std::string& note : rep.notes) os << "note: " << note << "\n";
  return os.str();
}

inline json report_json(const Report& rep) {
  json out;
  out["normalized"] = vector_json(rep.normalized);
  out["twist"] = rep.twist;
  out["delta"] = rep.delta.str();
  out["fiber_rank"] = rep.fiber_rank;
  out["gcd"] = rep.gcd;
  if (rep.x) out["x"] = rep.x->str();
  if (rep.query) out["query"] = interval_json(*rep.query);
  if (rep.x0) out["x0"] = rep.x0->str();
  if (rep.dim_stack) {
    out["dim_stack"] = rep.dim_stack->str();
    out["dim_coarse"] = rep.dim_coarse->str();
  } else {
    out["dim_note"] = rep.dim_note;
  }
  if (rep.exists.has_value()) out["exists"] = *rep.exists;
  if (!rep.exists_reason.empty()) out["exists_reason"] = rep.exists_reason;
  if (!rep.segments.empty()) {
    json segs = json::array();
    for (const SegmentVerdict& seg : rep.segments) {
      segs.push_back({{"interval", interval_json(seg.where)},
                      {"is_wall", seg.is_wall},
                      {"exists", seg.exists}});
    }
    out["segments"] = segs;
    out["exists_on"] = rep.exists_on ? interval_json(*rep.exists_on) : json(nullptr);
  }
  if (!rep.existence_note.empty()) out["existence_note"] = rep.existence_note;
  if (!rep.position.empty()) out["position"] = rep.position;
  out["walls"] = walls_json(rep.decomposition.walls);
  json chambers = json::array();
  for (const RayInterval& c : rep.decomposition.chambers) chambers.push_back(interval_json(c));
  out["chambers"] = chambers;
  out["non_locally_free_codim"] = rep.non_locally_free_codim;
  out["flags"] = {{"irreducible", flag_json(rep.irreducible)},
                  {"generically_mu_stable_locally_free",
                   flag_json(rep.generically_stable_locally_free)},
                  {"fiber_restriction_rigid", flag_json(rep.fiber_restriction_rigid)},
                  {"coarse_fine_smooth_projective", flag_json(rep.fine_smooth_projective)}};
  if (rep.construction) {
    const ExtensionData& c = *rep.construction;
    out["construction"] = {{"r1", c.r1}, {"d1", c.d1}, {"r2", c.r2},
                           {"d2", c.d2}, {"x0", c.x0.str()}};
  }
  out["notes"] = rep.notes;
  return out;
}

}  // namespace cli_detail

inline CliResult run_cli(std::vector<std::string> args) {
  using cli_detail::json;
  CliResult result;

  CLI::App app{"exact wall-and-chamber computations for moduli of sheaves on ruled surfaces",
               "ruledmod"};
  app.require_subcommand(1);

  long long genus = 0;
  long long invariant = 0;
  long long rank = 0;
  long long chi = 0;
  long long rank2 = 0;
  long long chi2 = 0;
  std::string xi_text;
  std::string xi2_text;
  std::string x_text;
  std::string x_min_text;
  std::string x_max_text;
  bool as_json = false;

  auto add_surface = [&](CLI::App* cmd) {
    cmd->add_option("--genus", genus, "genus of the base curve")->required();
    cmd->add_option("--invariant", invariant, "invariant e, with (C0^2) = -e")->required();
    cmd->add_flag("--json", as_json, "emit JSON instead of text");
  };
  auto add_vector = [&](CLI::App* cmd) {
    cmd->add_option("-r,--rank", rank, "rank")->required();
    cmd->add_option("--xi", xi_text, "c1 class as 'a,b' in the (C0, f) basis")->required();
    cmd->add_option("--chi", chi, "Euler characteristic")->required();
  };
  auto add_x = [&](CLI::App* cmd) {
    cmd->add_option("--x", x_text, "polarization parameter, H(x) = C0 + x f")->required();
  };
  auto add_range = [&](CLI::App* cmd) {
    cmd->add_option("--x-min", x_min_text, "lower end of the x range (open)")->required();
    cmd->add_option("--x-max", x_max_text, "upper end of the x range (closed); omit for inf");
  };

  CLI::App* cmd_surface = app.add_subcommand("surface-info", "lattice data of the surface");
  add_surface(cmd_surface);

  CLI::App* cmd_delta = app.add_subcommand("delta", "discriminant and c2 of a Chern vector");
  add_surface(cmd_delta);
  add_vector(cmd_delta);

  CLI::App* cmd_pairing = app.add_subcommand("pairing", "Euler pairing chi(e1, e2)");
  add_surface(cmd_pairing);
  add_vector(cmd_pairing);
  cmd_pairing->add_option("--r2", rank2, "rank of the second vector")->required();
  cmd_pairing->add_option("--xi2", xi2_text, "c1 class of the second vector")->required();
  cmd_pairing->add_option("--chi2", chi2, "Euler characteristic of the second vector")
      ->required();

  CLI::App* cmd_walls = app.add_subcommand("walls", "numerical walls crossing an x range");
  add_surface(cmd_walls);
  add_vector(cmd_walls);
  add_range(cmd_walls);

  CLI::App* cmd_chambers = app.add_subcommand("chambers", "chamber decomposition of an x range");
  add_surface(cmd_chambers);
  add_vector(cmd_chambers);
  add_range(cmd_chambers);

  CLI::App* cmd_exists = app.add_subcommand("exists", "non-emptiness at H(x) (g = 1)");
  add_surface(cmd_exists);
  add_vector(cmd_exists);
  add_x(cmd_exists);

  CLI::App* cmd_construct =
      app.add_subcommand("construct", "extension data of a general member (g = 1)");
  add_surface(cmd_construct);
  add_vector(cmd_construct);

  CLI::App* cmd_dim = app.add_subcommand("dim", "stack dimension where (K_X.H) < 0");
  add_surface(cmd_dim);
  add_vector(cmd_dim);
  add_x(cmd_dim);

  CLI::App* cmd_report = app.add_subcommand("report", "aggregated verdicts at x or on a range");
  add_surface(cmd_report);
  add_vector(cmd_report);
  cmd_report->add_option("--x", x_text, "polarization parameter");
  cmd_report->add_option("--x-min", x_min_text, "lower end of the x range (open)");
  cmd_report->add_option("--x-max", x_max_text, "upper end of the x range (closed)");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(std::move(args));
  } catch (const CLI::CallForHelp& e) {
    std::ostringstream os;
    os << app.help();
    result.out = os.str();
    return result;
  } catch (const CLI::ParseError& e) {
    result.err = std::string(e.what()) + "\n";
    result.status = 2;
    return result;
  }

  try {
    const RuledSurface surface(genus, invariant);
    json envelope;
    envelope["surface"] = cli_detail::surface_json(surface);
    std::string text;
    json res;

    auto vector_arg = [&]() {
      ChernVector e(rank, cli_detail::parse_xi(xi_text), chi);
      envelope["vector"] = cli_detail::vector_json(e);
      return e;
    };
    auto range_arg = [&]() {
      RayInterval range{Rational::parse(x_min_text), false, std::nullopt, false};
      if (!x_max_text.empty()) {
        range.hi = Rational::parse(x_max_text);
        range.hi_closed = true;
      }
      return range;
    };

    if (app.got_subcommand(cmd_surface)) {
      const DivClass k = canonical(surface);
      const Rational k2 = intersect(k, k, surface);
      std::ostringstream os;
      os << "ruled surface: g = " << surface.genus << ", e = " << surface.invariant << "\n"
         << "chi(O_X) = " << surface.chi_O() << "\n"
         << "K_X = " << k.str() << "\n"
         << "(K_X^2) = " << k2.str() << "\n"
         << "ample ray: H(x) = C0 + x f is ample iff x > " << ample_threshold(surface).str()
         << " (standard numerical criterion)\n";
      text = os.str();
      res = {{"chi_O", surface.chi_O()},
             {"canonical", cli_detail::div_json(k)},
             {"K2", k2.str()},
             {"ample_min", ample_threshold(surface).str()},
             {"ample_min_open", true}};
    } else if (app.got_subcommand(cmd_delta)) {
      const ChernVector e = vector_arg();
      const Rational delta = discriminant(e, surface);
      const Rational second = c2(e, surface);
      text = "Delta(e) = " + delta.str() + "\nc2(e) = " + second.str() + "\n";
      res = {{"delta", delta.str()}, {"c2", second.str()}};
    } else if (app.got_subcommand(cmd_pairing)) {
      const ChernVector e1 = vector_arg();
      const ChernVector e2(rank2, cli_detail::parse_xi(xi2_text), chi2);
      envelope["vector2"] = cli_detail::vector_json(e2);
      const Rational chi_pair = euler_pairing(e1, e2, surface);
      text = "chi(e1, e2) = " + chi_pair.str() + "\n";
      res = {{"chi", chi_pair.str()}};
    } else if (app.got_subcommand(cmd_walls)) {
      const ChernVector e = vector_arg();
      const RayInterval query = range_arg();
      const std::vector<Wall> walls = enumerate_walls(e, surface, query);
      const RayInterval clipped = *clip_to_ample(surface, query);
      text = cli_detail::render_walls_text(e, clipped, walls);
      res = {{"range", cli_detail::interval_json(clipped)},
             {"walls", cli_detail::walls_json(walls)}};
    } else if (app.got_subcommand(cmd_chambers)) {
      const ChernVector e = vector_arg();
      const ChamberDecomposition d = chambers(e, surface, range_arg());
      text = cli_detail::render_chambers_text(d);
      json chamber_list = json::array();
      for (const RayInterval& c : d.chambers) chamber_list.push_back(cli_detail::interval_json(c));
      res = {{"range", cli_detail::interval_json(d.range)},
             {"walls", cli_detail::walls_json(d.walls)},
             {"chambers", chamber_list}};
    } else if (app.got_subcommand(cmd_exists)) {
      const ChernVector e = vector_arg();
      const ExistsResult verdict = exists_mu_ss(e, surface, Rational::parse(x_text));
      text = cli_detail::render_exists_text(verdict);
      res = cli_detail::exists_json(verdict);
    } else if (app.got_subcommand(cmd_construct)) {
      const ChernVector e = vector_arg();
      const NormalizedVector n = normalize_fiber_degree(e, surface);
      const ExtensionData data = construct_general(n.vec, surface);
      std::ostringstream os;
      os << "extension: 0 -> F1(C0) -> E -> F2 -> 0\n"
         << "r1 = " << data.r1 << ", d1 = " << data.d1 << ", r2 = " << data.r2
         << ", d2 = " << data.d2 << "\n"
         << "x0 = " << data.x0.str() << "\n";
      if (n.m != 0) os << "input normalized by twist m = " << n.m << " (by C0)\n";
      text = os.str();
      res = {{"r1", data.r1}, {"d1", data.d1}, {"r2", data.r2},
             {"d2", data.d2}, {"x0", data.x0.str()}, {"twist", n.m}};
    } else if (app.got_subcommand(cmd_dim)) {
      const ChernVector e = vector_arg();
      const Rational dim = stack_dim(e, surface, Rational::parse(x_text));
      text = "dim_stack = " + dim.str() + "\ndim_coarse = " + (dim + Rational(1)).str() +
             " (stable locus; stack dimension + 1 convention)\n";
      res = {{"dim_stack", dim.str()}, {"dim_coarse", (dim + Rational(1)).str()}};
    } else if (app.got_subcommand(cmd_report)) {
      const ChernVector e = vector_arg();
      const bool has_x = !x_text.empty();
      const bool has_range = !x_min_text.empty();
      if (has_x == has_range) {
        throw input_error("report takes exactly one of --x or --x-min/--x-max");
      }
      const Report rep = has_x ? moduli_report(e, surface, Rational::parse(x_text))
                               : moduli_report(e, surface, range_arg());
      text = cli_detail::render_report_text(rep);
      res = cli_detail::report_json(rep);
    }

    envelope["result"] = res;
    result.out = as_json ? envelope.dump(2) + "\n" : text;
    return result;
  } catch (const hypothesis_error& e) {
    result.err = std::string("unsupported hypothesis: ") + e.what() + "\n";
    result.status = 3;
    return result;
  } catch (const std::invalid_argument& e) {
    result.err = std::string("invalid input: ") + e.what() + "\n";
    result.status = 2;
    return result;
  } catch (const std::exception& e) {
    result.err = std::string("internal error: ") + e.what() + "\n";
    result.status = 1;
    return result;
  }
}

}  // namespace ruledmod
