#include "oscact/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <json.hpp>

#include "oscact/actions.hpp"
#include "oscact/numerics.hpp"
#include "oscact/thermo.hpp"

namespace oscact::cli {

using ordered_json = nlohmann::ordered_json;

namespace {

double parse_number(const std::string& text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  auto [p, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || p != last) throw ArgumentError("cannot parse number: " + text);
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream is(text);
  while (std::getline(is, item, sep)) parts.push_back(item);
  if (!text.empty() && text.back() == sep) parts.push_back("");
  return parts;
}

// JSON value for a double: non-finite doubles have no JSON number
// representation, so they serialize as null.
ordered_json json_number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json json_lambda(const Lambda& l) {
  if (l.is_infinite()) return "inf";
  return l.value();
}

ActionModel model_from_config(const RunConfig& c) {
  switch (c.seed) {
    case Family::planck: return ActionModel::planck(c.hbar);
    case Family::vacuum: return ActionModel::vacuum(c.hbar);
    case Family::thermal: return ActionModel::thermal(c.hbar);
    case Family::fermi_symmetric: return ActionModel::fermi(c.hbar);
    case Family::general_zero_mode: return ActionModel::general(c.A, c.B, c.hbar);
    default: throw ArgumentError("action: unsupported family");
  }
}

DarbouxFamily family_from_config(const RunConfig& c, Lambda lambda, Interval domain) {
  DarbouxOptions opts;
  opts.strict_lambda = c.strict;
  opts.allow_negative_x = c.allow_negative_x;
  switch (c.seed) {
    case Family::planck: return DarbouxFamily::planck_seed(c.hbar, lambda, domain, opts);
    case Family::vacuum: return DarbouxFamily::vacuum_seed(c.hbar, lambda, domain, opts);
    case Family::fermi_symmetric: return DarbouxFamily::symmetric_seed(c.hbar, lambda, domain, opts);
    case Family::general_zero_mode:
      return DarbouxFamily::general_seed(c.A, c.B, c.hbar, lambda, domain, opts);
    default: throw ArgumentError("family: seed must be planck, vacuum, fermi or general");
  }
}

std::vector<Lambda> sorted_lambdas(const RunConfig& c) {
  std::vector<Lambda> ls = c.lambdas;
  if (ls.empty()) ls.push_back(Lambda::infinity());
  if (c.include_seed &&
      std::none_of(ls.begin(), ls.end(), [](const Lambda& l) { return l.is_infinite(); }))
    ls.push_back(Lambda::infinity());
  std::sort(ls.begin(), ls.end());
  return ls;
}

// --------------------------------------------------------------------------
// Command implementations. Each returns the exit code and writes one table.
// --------------------------------------------------------------------------

int cmd_action(const RunConfig& c, std::ostream& out, std::ostream& err) {
  const ActionModel model = model_from_config(c);
  const std::vector<double> grid = make_grid(c.grid);
  const bool with_u = c.omega.has_value();
  if (with_u && !(*c.omega > 0.0)) throw ArgumentError("action: omega must be positive");

  struct Row {
    double x;
    double f = 0.0, fp = 0.0, u = 0.0;
    bool singular = false;
  };
  std::vector<Row> rows;
  rows.reserve(grid.size());
  for (double x : grid) {
    Row row{x};
    try {
      row.f = model.value(x);
      row.fp = model.derivative(x);
      if (with_u) row.u = *c.omega * row.f;
    } catch (const SingularityError& e) {
      if (c.strict) throw;
      row.singular = true;
      err << "warning: singular row at x = " << format_double(x) << " (" << e.what() << ")\n";
    } catch (const NodeError& e) {
      if (c.strict) throw;
      row.singular = true;
      err << "warning: singular row at x = " << format_double(x) << " (" << e.what() << ")\n";
    }
    rows.push_back(row);
  }

  if (c.output_format == OutputFormat::csv) {
    out << (with_u ? "x,f,f_prime,U" : "x,f,f_prime") << "\n";
    for (const Row& r : rows) {
      out << format_double(r.x) << ',';
      if (r.singular) {
        out << "nan,nan";
        if (with_u) out << ",nan";
      } else {
        out << format_double(r.f) << ',' << format_double(r.fp);
        if (with_u) out << ',' << format_double(r.u);
      }
      out << "\n";
    }
  } else {
    ordered_json doc;
    doc["command"] = "action";
    doc["family"] = family_name(c.seed);
    doc["hbar"] = c.hbar;
    doc["omega"] = with_u ? ordered_json(*c.omega) : ordered_json(nullptr);
    doc["rows"] = ordered_json::array();
    for (const Row& r : rows) {
      ordered_json jr;
      jr["x"] = r.x;
      if (r.singular) {
        jr["singular"] = true;
      } else {
        jr["f"] = json_number(r.f);
        jr["f_prime"] = json_number(r.fp);
        if (with_u) jr["U"] = json_number(r.u);
      }
      doc["rows"].push_back(jr);
    }
    out << doc.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_family(const RunConfig& c, std::ostream& out, std::ostream&) {
  const std::vector<double> grid = make_grid(c.grid);
  const Interval domain{grid.front(), grid.back()};
  const std::vector<Lambda> lambdas = sorted_lambdas(c);

  // Validation happens inside create(); an invalid lambda throws
  // ValidationError before anything is emitted.
  std::vector<DarbouxFamily> families;
  families.reserve(lambdas.size());
  for (const Lambda& l : lambdas) families.push_back(family_from_config(c, l, domain));

  if (c.output_format == OutputFormat::csv) {
    out << "x,lambda,f_g,V_1g,w_lambda,I0,v\n";
    for (double x : grid) {
      for (size_t i = 0; i < lambdas.size(); ++i) {
        const DarbouxFamily& fam = families[i];
        out << format_double(x) << ',' << lambdas[i].str() << ','
            << format_double(fam.action(x)) << ',' << format_double(fam.transformed_potential(x))
            << ',' << format_double(fam.transformed_zero_mode(x)) << ','
            << format_double(fam.i0(x)) << ',' << format_double(fam.v(x)) << "\n";
      }
    }
  } else {
    ordered_json doc;
    doc["command"] = "family";
    doc["seed"] = family_name(c.seed);
    doc["hbar"] = c.hbar;
    doc["lambdas"] = ordered_json::array();
    for (const Lambda& l : lambdas) doc["lambdas"].push_back(json_lambda(l));
    doc["rows"] = ordered_json::array();
    for (double x : grid) {
      for (size_t i = 0; i < lambdas.size(); ++i) {
        const DarbouxFamily& fam = families[i];
        ordered_json jr;
        jr["x"] = x;
        jr["lambda"] = json_lambda(lambdas[i]);
        jr["f_g"] = json_number(fam.action(x));
        jr["V_1g"] = json_number(fam.transformed_potential(x));
        jr["w_lambda"] = json_number(fam.transformed_zero_mode(x));
        jr["I0"] = json_number(fam.i0(x));
        jr["v"] = json_number(fam.v(x));
        doc["rows"].push_back(jr);
      }
    }
    out << doc.dump(2) << "\n";
  }
  return kExitOk;
}

int cmd_verify(const RunConfig& c, std::ostream& out, std::ostream&) {
  const VerifyReport report = run_suite(c.suite, VerifyOptions{c.hbar, c.tolerance});

  if (c.output_format == OutputFormat::csv) {
    out << "suite,check,max_residual,tolerance,pass\n";
    for (const VerifyCheck& chk : report.checks)
      out << suite_name(report.suite) << ',' << chk.name << ',' << format_double(chk.max_residual)
          << ',' << format_double(chk.tolerance) << ',' << (chk.pass ? "true" : "false") << "\n";
  } else {
    ordered_json doc;
    doc["command"] = "verify";
    doc["suite"] = suite_name(report.suite);
    doc["hbar"] = c.hbar;
    doc["tolerance"] = c.tolerance;
    doc["overall"] = report.overall;
    doc["checks"] = ordered_json::array();
    for (const VerifyCheck& chk : report.checks) {
      ordered_json jc;
      jc["name"] = chk.name;
      jc["max_residual"] = json_number(chk.max_residual);
      jc["tolerance"] = chk.tolerance;
      jc["pass"] = chk.pass;
      doc["checks"].push_back(jc);
    }
    out << doc.dump(2) << "\n";
  }
  return report.overall ? kExitOk : kExitVerifyFailed;
}

int cmd_spectrum(const RunConfig& c, std::ostream& out, std::ostream&) {
  const std::vector<double> omegas = make_grid(c.grid);
  const std::vector<Lambda> lambdas = sorted_lambdas(c);
  SweepSpec spec;
  spec.seed_family = c.seed;
  spec.hbar = c.hbar;
  spec.A = c.A;
  spec.B = c.B;
  spec.options.strict_lambda = c.strict;
  spec.options.allow_negative_x = c.allow_negative_x;

  const SpectrumTable table = spectrum_sweep(omegas, c.beta, lambdas, spec, c.resistance);

  if (c.output_format == OutputFormat::csv) {
    out << "omega,beta,lambda,R,P,regime\n";
    for (const SpectrumRecord& r : table.records)
      out << format_double(r.omega) << ',' << format_double(r.beta) << ',' << r.lambda.str() << ','
          << format_double(r.resistance) << ',' << format_double(r.power) << ','
          << spectral_branch_name(r.branch) << "\n";
  } else {
    ordered_json doc;
    doc["command"] = "spectrum";
    doc["seed"] = family_name(c.seed);
    doc["hbar"] = c.hbar;
    doc["beta"] = c.beta;
    doc["rows"] = ordered_json::array();
    for (const SpectrumRecord& r : table.records) {
      ordered_json jr;
      jr["omega"] = r.omega;
      jr["beta"] = r.beta;
      jr["lambda"] = json_lambda(r.lambda);
      jr["R"] = json_number(r.resistance);
      jr["P"] = json_number(r.power);
      jr["regime"] = spectral_branch_name(r.branch);
      doc["rows"].push_back(jr);
    }
    out << doc.dump(2) << "\n";
  }
  return kExitOk;
}

void report_validation_error(const ValidationError& e, std::ostream& err) {
  ordered_json doc;
  doc["error"] = "validation";
  doc["message"] = e.what();
  doc["violations"] = ordered_json::array();
  for (const auto& [lo, hi] : e.brackets()) {
    ordered_json b;
    b["lo"] = lo;
    b["hi"] = hi;
    doc["violations"].push_back(b);
  }
  err << doc.dump(2) << "\n";
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ArgumentError("grid must be start:stop:count, got: " + text);
  GridSpec spec;
  spec.start = parse_number(parts[0]);
  spec.stop = parse_number(parts[1]);
  const double n = parse_number(parts[2]);
  if (!(n >= 2.0) || n != std::floor(n) || n > 1e7)
    throw ArgumentError("grid count must be an integer >= 2");
  spec.count = static_cast<int>(n);
  return spec;
}

GridSpec parse_points(const std::string& text) {
  GridSpec spec;
  for (const std::string& item : split(text, ','))
    spec.points.push_back(parse_number(item));
  if (spec.points.empty()) throw ArgumentError("empty point list");
  return spec;
}

std::vector<double> make_grid(const GridSpec& spec) {
  if (!spec.points.empty()) {
    for (size_t i = 1; i < spec.points.size(); ++i)
      if (!(spec.points[i] > spec.points[i - 1]))
        throw ArgumentError("explicit grid points must be strictly increasing");
    return spec.points;
  }
  if (spec.count < 2) throw ArgumentError("grid needs at least 2 points");
  if (!(spec.start < spec.stop)) throw ArgumentError("grid start must be below stop");
  return spec.log ? logspace(spec.start, spec.stop, spec.count)
                  : linspace(spec.start, spec.stop, spec.count);
}

std::vector<Lambda> parse_lambda_list(const std::string& text) {
  std::vector<Lambda> out;
  for (const std::string& item : split(text, ',')) out.push_back(lambda_from_string(item));
  if (out.empty()) throw ArgumentError("empty lambda list");
  return out;
}

ResistanceModel parse_resistance(const std::string& text) {
  if (text.rfind("rlc:", 0) == 0) {
    double r = 0.0, l = 0.0, cap = 0.0;
    bool have_r = false, have_l = false, have_c = false;
    for (const std::string& item : split(text.substr(4), ',')) {
      const auto eq = item.find('=');
      if (eq == std::string::npos) throw ArgumentError("rlc spec expects key=value pairs: " + text);
      const std::string key = item.substr(0, eq);
      const double value = parse_number(item.substr(eq + 1));
      if (key == "R") {
        r = value;
        have_r = true;
      } else if (key == "L") {
        l = value;
        have_l = true;
      } else if (key == "C") {
        cap = value;
        have_c = true;
      } else {
        throw ArgumentError("rlc spec: unknown key " + key);
      }
    }
    if (!have_r || !have_l || !have_c) throw ArgumentError("rlc spec needs R, L and C: " + text);
    return ResistanceModel::parallel_rlc(r, l, cap);
  }
  std::string value = text;
  if (text.rfind("constant:", 0) == 0) value = text.substr(9);
  if (value.rfind("R=", 0) == 0) value = value.substr(2);
  return ResistanceModel::constant(parse_number(value));
}

std::string format_double(double v) {
  char buf[40];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  if (ec != std::errc{}) return "nan";
  return std::string(buf, p);
}

std::string resolve_output_path(const std::string& path) {
  if (path.empty() || path.front() == '/') return path;
  const char* dir = std::getenv("OSCACT_OUTPUT_DIR");
  if (dir == nullptr || *dir == '\0') return path;
  std::string full(dir);
  if (full.back() != '/') full += '/';
  return full + path;
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
  std::ofstream file;
  std::ostream* sink = &out;
  const std::string path = resolve_output_path(config.output_path);
  if (!path.empty()) {
    file.open(path, std::ios::binary | std::ios::trunc);
    if (!file) {
      err << "error: cannot open output file: " << path << "\n";
      return kExitUsage;
    }
    sink = &file;
  }

  try {
    switch (config.command) {
      case Command::action: return cmd_action(config, *sink, err);
      case Command::family: return cmd_family(config, *sink, err);
      case Command::verify: return cmd_verify(config, *sink, err);
      case Command::spectrum: return cmd_spectrum(config, *sink, err);
    }
    err << "error: unknown command\n";
    return kExitUsage;
  } catch (const ValidationError& e) {
    report_validation_error(e, err);
    return kExitValidation;
  } catch (const SingularityError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const NodeError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace oscact::cli
