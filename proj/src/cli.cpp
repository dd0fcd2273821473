#include "pathweave/cli.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <fstream>
#include <iterator>
#include <optional>
#include <ostream>
#include <sstream>

#include "pathweave/biopax_io.hpp"
#include "pathweave/convert.hpp"
#include "pathweave/errors.hpp"
#include "pathweave/graph_export.hpp"
#include "pathweave/sbml_io.hpp"
#include "pathweave/sim_engine.hpp"
#include "pathweave/xml.hpp"

namespace pathweave::cli {

namespace {

// Raised for conditions that map directly to an exit code with a message.
struct Exit {
  int code;
  std::string message;
};

enum class Format { sbml, biopax };

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Exit{usage, "cannot read " + path};
  std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Exit{usage, "cannot read " + path};
  return bytes;
}

void write_output(const std::string& path, const std::string& bytes, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << bytes;
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw Exit{usage, "cannot write " + path};
  file << bytes;
  file.close();
  if (!file) throw Exit{usage, "cannot write " + path};
}

Format detect(std::string_view bytes) {
  const xml::Element root = xml::parse(bytes);
  if (root.local == "sbml") return Format::sbml;
  if (root.is(biopax::kRdfNamespace, "RDF")) return Format::biopax;
  throw FormatError("unrecognized document root <" + root.qname + ">");
}

Format resolve_format(const std::string& flag, std::string_view bytes) {
  if (flag == "sbml") return Format::sbml;
  if (flag == "biopax") return Format::biopax;
  return detect(bytes);
}

class Reporter {
 public:
  Reporter(std::ostream& err, LogLevel level) : err_(err), level_(level) {}

  void report(const Diagnostics& diagnostics) const {
    for (const auto& d : diagnostics) {
      if (d.severity == Severity::error || level_ >= LogLevel::warn) err_ << format_diagnostic(d) << '\n';
    }
  }
  void info(const std::string& line) const {
    if (level_ >= LogLevel::info) err_ << "info: " << line << '\n';
  }
  void debug(const std::string& line) const {
    if (level_ >= LogLevel::debug) err_ << "debug: " << line << '\n';
  }

 private:
  std::ostream& err_;
  LogLevel level_;
};

int cmd_validate(const std::string& path, const std::string& format, const Reporter& log) {
  const std::string bytes = read_file(path);
  const Format fmt = resolve_format(format, bytes);
  Diagnostics findings;
  if (fmt == Format::sbml) {
    log.debug("reading " + path + " as SBML");
    const auto model = sbml::read_sbml(bytes, &findings);
    auto more = sbml::validate(model);
    findings.insert(findings.end(), more.begin(), more.end());
    log.info("model '" + model.id + "': " + std::to_string(model.species.size()) + " species, " +
             std::to_string(model.reactions.size()) + " reactions");
  } else {
    log.debug("reading " + path + " as BioPAX");
    const auto graph = biopax::read_biopax(bytes, &findings);
    auto more = biopax::validate_graph(graph);
    findings.insert(findings.end(), more.begin(), more.end());
    log.info(std::to_string(graph.individuals().size()) + " individuals");
  }
  log.report(findings);
  return has_errors(findings) ? failed : ok;
}

int cmd_convert(const std::string& in_path, const std::string& out_path, const std::string& base_uri,
                std::ostream& out, const Reporter& log) {
  const std::string bytes = read_file(in_path);
  if (detect(bytes) == Format::biopax) throw Exit{usage, "reverse conversion unsupported"};
  Diagnostics warnings;
  const auto model = sbml::parse_sbml(bytes, &warnings);
  log.report(warnings);
  const auto graph = convert::sbml_to_biopax(model, base_uri);
  log.report(convert::conversion_report(model));
  write_output(out_path, biopax::serialize_biopax(graph), out);
  log.info("wrote " + std::to_string(graph.individuals().size()) + " individuals");
  return ok;
}

int cmd_simulate(const std::string& in_path, const sim::SimConfig& config, const std::string& out_path,
                 std::ostream& out, const Reporter& log) {
  config.validate();
  const std::string bytes = read_file(in_path);
  Diagnostics warnings;
  const auto model = sbml::parse_sbml(bytes, &warnings);
  log.report(warnings);
  const auto system = sim::OdeSystem::assemble(model);
  if (system.state_vars().empty()) throw Exit{usage, "model has no species to simulate"};
  log.debug("integrating with " + std::string(sim::to_string(config.method)));
  const auto traj = sim::integrate(system, system.initial_state(), config);

  std::string csv = "time";
  for (const auto& v : traj.var_names) csv += "," + v;
  csv += '\n';
  for (std::size_t r = 0; r < traj.rows(); ++r) {
    csv += format_number(traj.times[r]);
    for (const double v : traj.row(r)) csv += "," + format_number(v);
    csv += '\n';
  }
  write_output(out_path, csv, out);
  log.info(std::to_string(traj.rows()) + " samples");
  return ok;
}

int cmd_query(const std::string& path, const std::string& id, std::ostream& out, const Reporter& log) {
  const std::string bytes = read_file(path);
  if (detect(bytes) != Format::biopax) throw FormatError("query expects a BioPAX document");
  Diagnostics warnings;
  const auto graph = biopax::parse_biopax(bytes, &warnings);
  log.report(warnings);
  std::ostringstream listing;
  for (const auto& attr : biopax::attributes(graph, id)) {
    for (const auto& v : attr.values) listing << attr.key << '\t' << v << '\n';
  }
  out << listing.str();
  return ok;
}

int cmd_export_dot(const std::string& in_path, const std::string& out_path, std::ostream& out,
                   const Reporter& log) {
  const std::string bytes = read_file(in_path);
  Diagnostics warnings;
  const auto model = sbml::parse_sbml(bytes, &warnings);
  log.report(warnings);
  write_output(out_path, dot::export_dot(model), out);
  return ok;
}

}  // namespace

LogLevel parse_log_level(const char* value) {
  if (!value) return LogLevel::warn;
  const std::string_view v(value);
  if (v == "debug") return LogLevel::debug;
  if (v == "info") return LogLevel::info;
  return LogLevel::warn;
}

std::string format_number(double value) {
  if (value == 0.0) return "0";  // also folds -0
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 9);
  return std::string(buf, res.ptr);
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, LogLevel level) {
  CLI::App app{"Read, validate, convert and simulate SBML and BioPAX pathway models"};
  app.name("pathweave");
  app.require_subcommand(1);

  std::string in_path, out_path, format = "auto", id, base_uri, method = "rk4";
  sim::SimConfig config;

  auto* validate = app.add_subcommand("validate", "Check a document and print diagnostics");
  validate->add_option("path", in_path, "SBML or BioPAX file")->required();
  validate->add_option("--format", format, "Input format")->check(CLI::IsMember({"auto", "sbml", "biopax"}));

  auto* conv = app.add_subcommand("convert", "Write the BioPAX projection of an SBML model");
  conv->add_option("input", in_path, "SBML file")->required();
  conv->add_option("output", out_path, "BioPAX output file (stdout when omitted)");
  conv->add_option("--base-uri", base_uri, "xml:base of the output document");

  auto* simulate = app.add_subcommand("simulate", "Integrate an SBML model and write a CSV trajectory");
  simulate->add_option("input", in_path, "SBML file")->required();
  simulate->add_option("--t-end", config.t_end, "End time")->capture_default_str();
  simulate->add_option("--dt", config.dt, "Step (rk4) or initial step (rkf45)")->capture_default_str();
  simulate->add_option("--method", method, "Integrator")->check(CLI::IsMember({"rk4", "rkf45"}))->capture_default_str();
  simulate->add_option("--output-interval", config.output_interval, "Time between samples")->capture_default_str();
  simulate->add_option("--abs-tol", config.abs_tol, "Absolute tolerance (rkf45)")->capture_default_str();
  simulate->add_option("--rel-tol", config.rel_tol, "Relative tolerance (rkf45)")->capture_default_str();
  simulate->add_option("--out", out_path, "CSV output file (stdout when omitted)");

  auto* query = app.add_subcommand("query", "List the attributes of a BioPAX individual");
  query->add_option("path", in_path, "BioPAX file")->required();
  query->add_option("id", id, "Individual id")->required();

  auto* export_dot = app.add_subcommand("export-dot", "Write the reaction network as Graphviz DOT");
  export_dot->add_option("input", in_path, "SBML file")->required();
  export_dot->add_option("output", out_path, "DOT output file (stdout when omitted)");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : usage;
  }

  const Reporter log(err, level);
  try {
    if (*validate) return cmd_validate(in_path, format, log);
    if (*conv) return cmd_convert(in_path, out_path, base_uri, out, log);
    if (*simulate) {
      config.method = method == "rkf45" ? sim::Method::rkf45_adaptive : sim::Method::rk4_fixed;
      return cmd_simulate(in_path, config, out_path, out, log);
    }
    if (*query) return cmd_query(in_path, id, out, log);
    if (*export_dot) return cmd_export_dot(in_path, out_path, out, log);
  } catch (const Exit& e) {
    err << "error: " << e.message << '\n';
    return e.code;
  } catch (const ValidationError& e) {
    log.report(e.diagnostics());
    return failed;
  } catch (const IntegrationError& e) {
    err << "error: " << e.what() << '\n';
    return numeric;
  } catch (const NumericDomainError& e) {
    err << "error: " << e.what() << '\n';
    return numeric;
  } catch (const LookupError& e) {
    err << "error: " << e.what() << '\n';
    return failed;
  } catch (const ReferenceError& e) {
    err << "error: " << e.what() << '\n';
    return failed;
  } catch (const CycleError& e) {
    err << "error: " << e.what() << '\n';
    return failed;
  } catch (const Error& e) {
    // syntax, format, config and remaining structural errors
    err << "error: " << e.what() << '\n';
    return usage;
  }
  return usage;
}

}  // namespace pathweave::cli
