#include "diracspec/cli.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "diracspec/birman_schwinger.hpp"
#include "diracspec/delta_models.hpp"
#include "diracspec/enclosures.hpp"
#include "diracspec/potential.hpp"
#include "diracspec/resonance_regions.hpp"
#include "diracspec/version.hpp"

namespace diracspec::cli {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

json jc(Complex z) { return json::array({z.real(), z.imag()}); }

json disks_json(const DiskRegion& region) {
  json out = json::array();
  for (const auto& d : region.disks)
    out.push_back({{"center", jc(d.center)}, {"radius", d.radius}});
  return out;
}

// "a+bi" with either part optional: "2i", "0.3", "-1-0.5i", "0+2i"
Complex parse_complex(const std::string& text) {
  std::string s = text;
  s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
  if (s.empty()) throw DomainError("empty complex literal");
  if (s.back() != 'i') {
    std::size_t pos = 0;
    const double re = std::stod(s, &pos);
    if (pos != s.size()) throw DomainError("bad complex literal '" + text + "'");
    return {re, 0.0};
  }
  s.pop_back();  // drop the trailing i
  // split at the last +/- that is not an exponent sign and not leading
  std::size_t split = std::string::npos;
  for (std::size_t i = s.size(); i-- > 1;) {
    if ((s[i] == '+' || s[i] == '-') && s[i - 1] != 'e' && s[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  try {
    if (split == std::string::npos) {
      const std::string imag = s.empty() || s == "+" ? "1" : (s == "-" ? "-1" : s);
      return {0.0, std::stod(imag)};
    }
    const double re = std::stod(s.substr(0, split));
    std::string im_part = s.substr(split);
    if (im_part == "+") im_part = "1";
    if (im_part == "-") im_part = "-1";
    return {re, std::stod(im_part)};
  } catch (const std::exception&) {
    throw DomainError("bad complex literal '" + text + "'");
  }
}

Rect parse_region(const std::string& text) {
  std::istringstream ss(text);
  double v[4];
  char comma;
  for (int i = 0; i < 4; ++i) {
    if (i > 0 && !(ss >> comma)) throw DomainError("bad region '" + text + "'");
    if (!(ss >> v[i])) throw DomainError("bad region '" + text + "'");
  }
  return Rect{v[0], v[1], v[2], v[3]};
}

Potential load_potential(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open potential file '" + path + "'");
  json j;
  in >> j;
  return Potential::from_json(j);
}

struct Output {
  std::string path;    // empty = stdout
  std::string format;  // json | csv
};

void emit(const Output& o, const json& report,
          const std::vector<std::string>& csv_lines, std::ostream& out) {
  std::ostream* os = &out;
  std::ofstream file;
  if (!o.path.empty()) {
    file.open(o.path);
    if (!file) throw DomainError("cannot open output file '" + o.path + "'");
    os = &file;
  }
  if (o.format == "csv") {
    for (const auto& line : csv_lines) *os << line << "\n";
  } else {
    *os << report.dump(2) << "\n";
  }
}

json envelope(const std::string& command, const json& config) {
  return json{{"tool", "diracspec"},
              {"version", DIRACSPEC_VERSION},
              {"command", command},
              {"config", config}};
}

std::string fmt(double v) {
  std::ostringstream ss;
  ss.precision(12);
  ss << v;
  return ss.str();
}

json roots_json(const SpectrumSearchReport& rep) {
  json roots = json::array();
  for (const auto& r : rep.roots) {
    json item{{"z", jc(r.z)}, {"residual", r.residual}, {"winding", r.winding}};
    if (r.persisted_z) {
      item["persisted_z"] = jc(*r.persisted_z);
      item["persisted"] = r.persisted;
    }
    roots.push_back(item);
  }
  return roots;
}

json search_json(const SpectrumSearchReport& rep) {
  json cells = json::array();
  for (const auto& c : rep.cells)
    cells.push_back({{"cell",
                      {c.cell.re_min, c.cell.re_max, c.cell.im_min, c.cell.im_max}},
                     {"winding", c.winding}});
  return json{{"region", {rep.region.re_min, rep.region.re_max,
                          rep.region.im_min, rep.region.im_max}},
              {"nodes", rep.nodes},
              {"truncation", rep.truncation},
              {"theta", jc(rep.theta)},
              {"total_winding", rep.total_winding},
              {"evaluations", rep.evaluations},
              {"contour_windings", cells},
              {"eigenvalues", roots_json(rep)}};
}

std::vector<std::string> roots_csv(const SpectrumSearchReport& rep) {
  std::vector<std::string> lines{"re_z,im_z,residual,winding"};
  for (const auto& r : rep.roots)
    lines.push_back(fmt(r.z.real()) + "," + fmt(r.z.imag()) + "," +
                    fmt(r.residual) + "," + std::to_string(r.winding));
  return lines;
}

json figure_report(int figure) {
  json payload;
  std::vector<std::string> csv;
  if (figure == 1) {
    // disk boundaries for three values of ||V||_1, m = 1
    payload["figure"] = 1;
    payload["mass"] = 1.0;
    json curves = json::array();
    for (double v1 : {0.8, 0.96, 0.978}) {
      const EnclosureResult enc = theorem1_disks(v1, 1.0);
      for (int side = 0; side < 2; ++side) {
        json pts = json::array();
        const auto& d = enc.disks.disks[side];
        for (int i = 0; i < 256; ++i) {
          const double t = 2.0 * kPi * i / 256;
          pts.push_back(jc(d.center + d.radius * Complex(std::cos(t), std::sin(t))));
        }
        curves.push_back({{"v1", v1},
                          {"family", side == 0 ? "right" : "left"},
                          {"points", pts}});
      }
    }
    payload["curves"] = curves;
  } else if (figure == 2) {
    // boundary of D_theta at phi = pi/6, m = 1: rotated spectral curves
    // plus the real rays
    const double phi = kPi / 6.0, m = 1.0;
    payload["figure"] = 2;
    payload["mass"] = m;
    payload["phi"] = phi;
    const Complex e2 = std::exp(Complex(0.0, -2.0 * phi));
    json right = json::array(), left = json::array();
    json right_real = json::array(), left_real = json::array();
    for (int i = 0; i <= 256; ++i) {
      const double p = 6.0 * i / 256;
      const Complex c = std::sqrt(e2 * p * p + m * m);
      right.push_back(jc(c));
      left.push_back(jc(-c));
      right_real.push_back(jc(Complex(std::sqrt(p * p + m * m), 0.0)));
      left_real.push_back(jc(Complex(-std::sqrt(p * p + m * m), 0.0)));
    }
    payload["right"] = right;
    payload["left"] = left;
    payload["right_real"] = right_real;
    payload["left_real"] = left_real;
  } else {
    // resonance exclusion curves for the Gaussian of the resonance example
    const Potential v = Potential::gaussian_scalar(0.3, 1.0);
    const double phi0 = phi0_massless(v);
    const double phi_max = 0.9 * phi0;
    const ExclusionCurves curves = exclusion_curves(v, 1.0, phi_max, 33);
    payload["figure"] = 3;
    payload["mass"] = 1.0;
    payload["potential"] = v.description();
    payload["phi_max"] = phi_max;
    json right = json::array(), left = json::array();
    for (const auto& c : curves.right)
      right.push_back({{"phi", c.phi}, {"z", jc(c.z)}});
    for (const auto& c : curves.left)
      left.push_back({{"phi", c.phi}, {"z", jc(c.z)}});
    payload["right"] = right;
    payload["left"] = left;
  }
  return payload;
}

std::vector<std::string> figure_csv(int figure, const json& payload) {
  std::vector<std::string> lines;
  auto pt = [](const json& z) { return fmt(z[0]) + "," + fmt(z[1]); };
  if (figure == 1) {
    lines.push_back("v1,family,re_z,im_z");
    for (const auto& curve : payload["curves"])
      for (const auto& z : curve["points"])
        lines.push_back(fmt(curve["v1"].get<double>()) + "," +
                        curve["family"].get<std::string>() + "," + pt(z));
  } else if (figure == 2) {
    lines.push_back("family,re_z,im_z");
    for (const char* fam : {"right", "left", "right_real", "left_real"})
      for (const auto& z : payload[fam])
        lines.push_back(std::string(fam) + "," + pt(z));
  } else {
    lines.push_back("phi,re_z,im_z,family");
    for (const char* fam : {"right", "left"})
      for (const auto& c : payload[fam])
        lines.push_back(fmt(c["phi"].get<double>()) + "," + pt(c["z"]) + "," + fam);
  }
  return lines;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Spectral enclosures and Birman-Schwinger spectra for 1-D "
               "Dirac operators with non-Hermitian matrix potentials"};
  app.require_subcommand(0, 1);

  Output output{.path = "", .format = "json"};
  app.add_option("--out", output.path, "output file (default stdout)");
  app.add_option("--format", output.format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  int figure = 0;
  app.add_option("--figure", figure, "emit the data behind a paper figure")
      ->check(CLI::IsMember({1, 2, 3}));

  // shared option storage
  double v1 = -1.0, mass = 0.0, cspeed = 0.0, epsilon = 0.0, pexp = 0.0,
         phi = -1.0, tol = 1e-8, truncation = 0.0;
  double kappa = 0.0, tau = 0.0;
  int nodes = 200;
  std::string z_text, potential_path, criterion, region_text;

  auto* enclose = app.add_subcommand("enclose", "Theorem-2.1 style enclosure disks");
  enclose->add_option("--v1", v1, "L1 norm of the potential")->required();
  enclose->add_option("--mass", mass, "particle mass")->required();
  enclose->add_option("--c", cspeed, "speed of light (nonrelativistic form)");

  auto* check = app.add_subcommand("check", "point exclusion tests");
  check->add_option("--z", z_text, "spectral point, format a+bi")->required();
  check->add_option("--mass", mass)->required();
  check->add_option("--criterion", criterion, "l1|imag|ceps|fv|lp")
      ->required()
      ->check(CLI::IsMember({"l1", "imag", "ceps", "fv", "lp"}));
  check->add_option("--v1", v1, "L1 norm (criterion l1)");
  check->add_option("--potential", potential_path, "potential JSON file");
  check->add_option("--epsilon", epsilon, "clipping level (criterion ceps)");
  check->add_option("--p", pexp, "Lp exponent (criterion lp)");

  auto* spectrum = app.add_subcommand("spectrum", "determinant root search");
  spectrum->add_option("--potential", potential_path)->required();
  spectrum->add_option("--mass", mass)->required();
  spectrum->add_option("--region", region_text, "re_min,re_max,im_min,im_max")->required();
  spectrum->add_option("--nodes", nodes, "quadrature nodes (default 200)");
  spectrum->add_option("--truncation", truncation, "override truncation radius");
  spectrum->add_option("--tol", tol, "determinant tolerance (default 1e-8)");

  auto* delta = app.add_subcommand("delta", "closed-form delta-potential spectra");
  delta->add_option("--kappa", kappa, "coupling")->required();
  delta->add_option("--tau", tau, "phase in [-pi, pi)")->required();
  delta->add_option("--mass", mass)->required();

  auto* resonances = app.add_subcommand("resonances", "dilated determinant search");
  resonances->add_option("--potential", potential_path)->required();
  resonances->add_option("--mass", mass)->required();
  resonances->add_option("--phi", phi, "dilation angle Im theta")->required();
  resonances->add_option("--region", region_text)->required();
  resonances->add_option("--nodes", nodes);
  resonances->add_option("--truncation", truncation);
  resonances->add_option("--tol", tol);

  auto* fv_cmd = app.add_subcommand("fv", "F_V profile and gap interval");
  fv_cmd->add_option("--potential", potential_path)->required();
  fv_cmd->add_option("--mass", mass)->required();

  auto* curves_cmd = app.add_subcommand("curves", "resonance exclusion curves");
  curves_cmd->add_option("--potential", potential_path)->required();
  curves_cmd->add_option("--mass", mass)->required();
  curves_cmd->add_option("--phi", phi, "sweep maximum (default 0.9 phi0)");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {  // --help
      out << app.help();
      return 0;
    }
    err << "error: " << e.what() << "\n";
    return 2;
  }

  try {
    json config{{"format", output.format}};

    if (figure != 0) {
      config["figure"] = figure;
      json rep = envelope("figure", config);
      const json payload = figure_report(figure);
      rep.update(payload);
      emit(output, rep, figure_csv(figure, payload), out);
      return 0;
    }
    if (app.get_subcommands().empty()) {
      err << "error: a subcommand or --figure is required\n";
      return 2;
    }

    if (*enclose) {
      config.update({{"v1", v1}, {"mass", mass}});
      const bool rel = enclose->count("--c") == 0;
      if (!rel) config["c"] = cspeed;
      const EnclosureResult enc =
          rel ? theorem1_disks(v1, mass) : nonrelativistic_disks(v1, mass, cspeed);
      json rep = envelope("enclose", config);
      rep["x0"] = enc.x0;
      rep["r0"] = enc.r0;
      rep["disks"] = disks_json(enc.disks);
      std::vector<std::string> csv{"family,re_center,im_center,radius"};
      const char* fams[2] = {"right", "left"};
      for (int i = 0; i < 2; ++i)
        csv.push_back(std::string(fams[i]) + "," +
                      fmt(enc.disks.disks[i].center.real()) + "," +
                      fmt(enc.disks.disks[i].center.imag()) + "," +
                      fmt(enc.disks.disks[i].radius));
      emit(output, rep, csv, out);
      return 0;
    }

    if (*check) {
      const Complex z = parse_complex(z_text);
      config.update({{"z", jc(z)}, {"mass", mass}, {"criterion", criterion}});
      ExclusionVerdict verdict;
      if (criterion == "l1") {
        double norm = v1;
        if (check->count("--v1") == 0) {
          if (potential_path.empty())
            throw DomainError("check l1: give --v1 or --potential");
          norm = l1_norm(load_potential(potential_path));
        }
        config["v1"] = norm;
        verdict = theorem1_excluded(z, norm, mass);
      } else if (criterion == "imag") {
        if (potential_path.empty())
          throw DomainError("check imag: --potential required");
        const Potential pot = load_potential(potential_path);
        // i * Vtilde with Vtilde >= 0: spot-check the caller's assertion
        for (double x : {-1.0, 0.0, 0.7}) {
          const Matrix2 vt = pot(x) / Complex(0.0, 1.0);
          if ((vt - vt.adjoint().eval()).norm() > 1e-10 * (1.0 + vt.norm()) ||
              vt(0, 0).real() < -1e-12 || vt(1, 1).real() < -1e-12)
            throw ConditionViolatedError(
                "check imag: potential is not i*Vtilde with Vtilde >= 0");
        }
        const auto [n11, n22] = diagonal_l1_norms(pot);
        config["l1_v11"] = n11;
        config["l1_v22"] = n22;
        verdict = imaginary_potential_excluded(z, n11, n22, mass);
      } else if (criterion == "ceps") {
        if (potential_path.empty() || epsilon <= 0.0)
          throw DomainError("check ceps: --potential and --epsilon required");
        const Potential pot = load_potential(potential_path);
        const ClippedDecomposition dec = clip_decompose(pot, epsilon);
        config["epsilon"] = epsilon;
        config["l1_of_W"] = dec.l1_of_W;
        verdict = ceps_excluded(z, dec, mass);
      } else if (criterion == "fv") {
        if (potential_path.empty()) throw DomainError("check fv: --potential required");
        verdict = fv_excluded(z, load_potential(potential_path), mass);
      } else {
        if (potential_path.empty() || !(pexp > 1.0))
          throw DomainError("check lp: --potential and --p > 1 required");
        const Potential pot = load_potential(potential_path);
        const double vp = lp_norm(pot, pexp);
        config["p"] = pexp;
        config["vp"] = vp;
        verdict = lp_excluded(z, vp, pexp, mass);
      }
      json rep = envelope("check", config);
      rep["excluded"] = verdict.excluded;
      rep["margin"] = verdict.margin;
      emit(output, rep,
           {"excluded,margin",
            std::string(verdict.excluded ? "true" : "false") + "," + fmt(verdict.margin)},
           out);
      return 0;
    }

    if (*delta) {
      config.update({{"kappa", kappa}, {"tau", tau}, {"mass", mass}});
      const DeltaPotential pot{kappa, tau, mass};
      const DeltaSpectrum spec = delta_spectrum(pot);
      json rep = envelope("delta", config);
      json eigs = json::array(), zetas = json::array();
      for (const auto& e : spec.eigenvalues) eigs.push_back(jc(e));
      for (const auto& zt : spec.zetas) zetas.push_back(jc(zt));
      rep["eigenvalues"] = eigs;
      rep["zetas"] = zetas;
      rep["regime"] = spec.regime == DeltaRegime::Subcritical ? "subcritical"
                      : spec.regime == DeltaRegime::CriticalDense
                          ? "critical_dense"
                          : "supercritical";
      rep["double_root"] = spec.double_root;
      if (kappa < 1.0 && tau > 0.0 && tau < kPi && mass > 0.0)
        rep["residual_on_disks"] = delta_on_disk_boundary(pot);
      if (kappa >= 1.0 && mass == 0.0) {
        const auto half = delta_dense_halfplane(pot);
        rep["dense_halfplane"] =
            half ? json(*half == HalfPlane::Upper ? "upper" : "lower") : json();
      }
      std::vector<std::string> csv{"re_z,im_z"};
      for (const auto& e : spec.eigenvalues)
        csv.push_back(fmt(e.real()) + "," + fmt(e.imag()));
      emit(output, rep, csv, out);
      return 0;
    }

    if (*spectrum || *resonances) {
      const Potential pot = load_potential(potential_path);
      const Rect region = parse_region(region_text);
      SearchOptions opts;
      opts.assembly.nodes = nodes;
      opts.assembly.truncation = truncation;
      opts.det_tol = tol;
      config.update({{"potential", pot.description()},
                     {"mass", mass},
                     {"region", {region.re_min, region.re_max, region.im_min, region.im_max}},
                     {"nodes", nodes},
                     {"det_tol", {{"value", tol},
                                  {"source", (*spectrum ? spectrum : resonances)->count("--tol")
                                                 ? "flag" : "default"}}}});
      SpectrumSearchReport search;
      if (*spectrum) {
        search = det_root_search(pot, mass, region, opts);
      } else {
        config["phi"] = phi;
        search = resonance_search(pot, mass, phi, region, opts);
      }
      json rep = envelope(*spectrum ? "spectrum" : "resonances", config);
      rep.update(search_json(search));
      emit(output, rep, roots_csv(search), out);
      return 0;
    }

    if (*fv_cmd) {
      const Potential pot = load_potential(potential_path);
      config.update({{"potential", pot.description()}, {"mass", mass}});
      json rep = envelope("fv", config);
      rep["l1"] = pot.is_zero() ? 0.0 : l1_norm(pot);
      json samples = json::array();
      std::vector<std::string> csv{"s,f_v"};
      for (int i = 0; i <= 24; ++i) {
        const double s = std::pow(10.0, -2.0 + 4.0 * i / 24.0);
        const double val = f_v(pot, s);
        samples.push_back({s, val});
        csv.push_back(fmt(s) + "," + fmt(val));
      }
      rep["samples"] = samples;
      if (mass > 0.0) {
        const auto gap = gap_interval(pot, mass);
        rep["gap_interval"] = gap ? json({gap->first, gap->second}) : json();
      }
      emit(output, rep, csv, out);
      return 0;
    }

    // curves
    {
      const Potential pot = load_potential(potential_path);
      double phi_max = phi;
      if (curves_cmd->count("--phi") == 0) {
        if (mass > 0.0 && !pot.is_zero() && l1_norm(pot) < 1.0) {
          phi_max = 0.9 * phi0_massless(pot);
        } else {
          throw DomainError("curves: give --phi or a potential with L1 norm < 1");
        }
      }
      config.update({{"potential", pot.description()},
                     {"mass", mass},
                     {"phi_max", phi_max},
                     {"samples", 33}});
      const ExclusionCurves curves = exclusion_curves(pot, mass, phi_max, 33);
      json rep = envelope("curves", config);
      json right = json::array(), left = json::array();
      std::vector<std::string> csv{"phi,re_z,im_z,family"};
      for (const auto& c : curves.right) {
        right.push_back({{"phi", c.phi}, {"z", jc(c.z)}});
        csv.push_back(fmt(c.phi) + "," + fmt(c.z.real()) + "," + fmt(c.z.imag()) + ",right");
      }
      for (const auto& c : curves.left) {
        left.push_back({{"phi", c.phi}, {"z", jc(c.z)}});
        csv.push_back(fmt(c.phi) + "," + fmt(c.z.real()) + "," + fmt(c.z.imag()) + ",left");
      }
      rep["right"] = right;
      rep["left"] = left;
      emit(output, rep, csv, out);
      return 0;
    }
  } catch (const NonIntegrableError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const WindingUnresolvedError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const NoIntersectionError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

}  // namespace diracspec::cli
