#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ivpkit/ccseq.hpp"
#include "ivpkit/decompose.hpp"
#include "ivpkit/errors.hpp"
#include "ivpkit/json_io.hpp"
#include "ivpkit/mahavier.hpp"
#include "ivpkit/parallel.hpp"
#include "ivpkit/report.hpp"
#include "ivpkit/svg.hpp"

using namespace ivpkit;
using io::json;

namespace {

enum Exit { kOk = 0, kParse = 2, kInvalid = 3, kBudget = 4, kHypothesis = 5 };

std::vector<PLGraph> load_all(const std::vector<std::string>& files) {
  std::vector<PLGraph> out;
  for (const auto& f : files)
    for (auto& g : read_graph_file(f)) out.push_back(std::move(g));
  if (out.empty()) throw ParseError(0, "no graphs in input");
  return out;
}

PLGraph load_one(const std::string& file) {
  auto gs = read_graph_file(file);
  if (gs.size() != 1) throw ParseError(0, file + ": expected exactly one graph");
  return gs.front();
}

Rat arg_rat(const std::string& s) {
  auto r = parse_rat(s);
  if (!r) throw std::invalid_argument("bad rational '" + s + "'");
  return *r;
}

void require_valid(const PLGraph& g) {
  if (!validate(g).domain_total) throw PreconditionError((g.name.empty() ? "graph" : g.name) + " is not domain-total");
}

void write_text(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot write " + path);
  os << text;
}

std::string pt_text(const Pt& p) { return "(" + to_string(p.x) + ", " + to_string(p.y) + ")"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of piecewise-linear set-valued maps on [0,1]"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "Worker threads (default: IVP_THREADS, else all cores)")->check(CLI::NonNegativeNumber);

  // analyze
  auto* analyze_cmd = app.add_subcommand("analyze", "Run every decider on one graph");
  std::string analyze_file;
  bool as_json = false, as_text = false;
  analyze_cmd->add_option("file", analyze_file)->required();
  auto* json_flag = analyze_cmd->add_flag("--json", as_json, "JSON report");
  analyze_cmd->add_flag("--text", as_text, "Text report (default)")->excludes(json_flag);

  // compose
  auto* compose_cmd = app.add_subcommand("compose", "Compose two graphs, or raise one to a power");
  std::vector<std::string> compose_files;
  int power = 0;
  std::string compose_out;
  compose_cmd->add_option("files", compose_files, "FILE [FILE2]: FILE2 acts first")->required()->expected(1, 2);
  compose_cmd->add_option("--power", power, "k-th power of FILE")->check(CLI::PositiveNumber);
  compose_cmd->add_option("-o,--output", compose_out, "Output graph file (default stdout)");

  // mahavier
  auto* mahavier_cmd = app.add_subcommand("mahavier", "Build G_n and decide connectedness");
  std::vector<std::string> mahavier_files;
  int mahavier_n = 2;
  std::uint64_t budget = BuildOptions{}.budget;
  bool mahavier_json = false;
  mahavier_cmd->add_option("files", mahavier_files, "Bonding graphs f_1, f_2, ...; the last one repeats")->required();
  mahavier_cmd->add_option("--n", mahavier_n)->check(CLI::PositiveNumber);
  mahavier_cmd->add_option("--budget", budget, "Maximum number of segment tuples");
  mahavier_cmd->add_flag("--json", mahavier_json);

  // ccsearch / ccvalidate
  auto* search_cmd = app.add_subcommand("ccsearch", "Bounded search for a CC certificate");
  std::vector<std::string> search_files;
  CCSearchOptions search_opts;
  search_cmd->add_option("files", search_files)->required();
  search_cmd->add_option("--max-window", search_opts.max_window)->check(CLI::Range(2, 8));
  search_cmd->add_option("--frame-depth", search_opts.frame_depth)->check(CLI::Range(0, 6));

  auto* validate_cmd = app.add_subcommand("ccvalidate", "Check a CC certificate clause by clause");
  std::vector<std::string> validate_args;
  validate_cmd->add_option("args", validate_args, "FILES... CERT.json")->required()->expected(2, -1);

  // render
  auto* render_cmd = app.add_subcommand("render", "Draw a graph as SVG");
  std::string render_file, svg_out;
  std::vector<std::string> strip_args, frame_args;
  RenderOptions render_opts;
  render_cmd->add_option("file", render_file)->required();
  render_cmd->add_option("--svg", svg_out, "Output file (default stdout)");
  render_cmd->add_option("--strip", strip_args, "A B")->expected(2);
  render_cmd->add_option("--frame", frame_args, "DOM_LO DOM_HI COD_LO COD_HI EPS")->expected(5);
  render_cmd->add_option("--size", render_opts.size)->check(CLI::Range(50, 4000));

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Compare the exact decider with the pixel-grid oracle");
  std::string oracle_file;
  int grid = 512;
  oracle_cmd->add_option("file", oracle_file)->required();
  oracle_cmd->add_option("--grid", grid)->check(CLI::Range(8, 8192));

  // decompose
  auto* decompose_cmd = app.add_subcommand("decompose", "Dyadic chain decomposition");
  std::string decompose_file;
  int depth = 1;
  decompose_cmd->add_option("file", decompose_file)->required();
  decompose_cmd->add_option("--depth", depth)->check(CLI::Range(0, 12));

  // export-fixtures
  auto* export_cmd = app.add_subcommand("export-fixtures", "Write the builtin fixtures as graph files");
  std::string export_dir = "fixtures";
  export_cmd->add_option("dir", export_dir);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kParse;
  }
  if (threads > 0) set_default_threads(threads);

  try {
    if (*analyze_cmd) {
      PLGraph g = load_one(analyze_file);
      AnalysisReport r = analyze(g);
      if (as_json)
        std::cout << io::encode(r).dump(2) << "\n";
      else
        std::cout << format_text(r);
      return r.complete() ? kOk : kInvalid;
    }

    if (*compose_cmd) {
      PLGraph f = load_one(compose_files[0]);
      require_valid(f);
      PLGraph out;
      if (compose_files.size() == 2) {
        if (power) throw std::invalid_argument("--power takes a single file");
        PLGraph g = load_one(compose_files[1]);
        require_valid(g);
        out = compose(f, g);
      } else {
        out = power ? ivpkit::power(f, power) : canonicalize(f);
      }
      write_text(compose_out, serialize(out));
      auto iso = isolated_points(out);
      std::ostream& info = compose_out.empty() || compose_out == "-" ? std::cerr : std::cout;
      info << "isolated points: " << iso.size() << "\n";
      for (const auto& p : iso) info << "  " << pt_text(p) << "\n";
      return kOk;
    }

    if (*mahavier_cmd) {
      auto graphs = load_all(mahavier_files);
      for (const auto& g : graphs) require_valid(g);
      CellComplex cc = build(graphs, mahavier_n, {budget, 0});
      ConnectivityVerdict v = is_connected(cc);
      if (mahavier_json) {
        std::cout << io::mahavier_report(cc, v).dump(2) << "\n";
      } else {
        std::cout << "n " << cc.n << "\ncells " << cc.cells.size() << " of " << cc.tuples_total << " tuples\nedges "
                  << cc.edges.size() << "\nconnected " << v.connected << "\ncomponents " << v.components
                  << "\nbonding_surjective " << v.bonding_surjective << "\n";
        for (std::size_t s = 0; s < v.witness_points.size(); ++s) {
          std::cout << "cut side " << s << " point (";
          for (std::size_t i = 0; i < v.witness_points[s].size(); ++i)
            std::cout << (i ? ", " : "") << to_string(v.witness_points[s][i]);
          std::cout << ")\n";
        }
      }
      return kOk;
    }

    if (*search_cmd) {
      auto graphs = load_all(search_files);
      auto cert = cc_search(graphs, search_opts);
      if (cert)
        std::cout << io::encode(*cert).dump(2) << "\n";
      else
        std::cout << "inconclusive\n";
      return kOk;
    }

    if (*validate_cmd) {
      std::vector<std::string> files(validate_args.begin(), validate_args.end() - 1);
      std::ifstream in(validate_args.back());
      if (!in) throw ParseError(0, "cannot open " + validate_args.back());
      json j;
      try {
        j = json::parse(in);
      } catch (const json::exception& e) {
        throw std::invalid_argument(e.what());
      }
      CCCertificate cert = io::decode_cc_certificate(j);
      CCReport r = cc_validate(load_all(files), cert);
      std::cout << io::encode(r).dump(2) << "\n";
      return kOk;
    }

    if (*render_cmd) {
      PLGraph g = load_one(render_file);
      if (!strip_args.empty()) render_opts.strip = Interval{arg_rat(strip_args[0]), arg_rat(strip_args[1])};
      if (!frame_args.empty()) {
        Frame f{{arg_rat(frame_args[0]), arg_rat(frame_args[1])},
                {arg_rat(frame_args[2]), arg_rat(frame_args[3])},
                arg_rat(frame_args[4])};
        if (!frame_valid(f)) throw std::invalid_argument("invalid frame");
        render_opts.frame = f;
      }
      write_text(svg_out, render_svg(g, render_opts));
      return kOk;
    }

    if (*oracle_cmd) {
      PLGraph g = load_one(oracle_file);
      require_valid(g);
      bool exact = has_wivp(g).holds;
      GridOracleReport r = wivp_grid_oracle(g, grid);
      bool agree = r.failed == !exact;
      std::cout << (r.failed ? "failed" : "plausible") << " at grid " << grid << "; exact wivp " << exact << "; "
                << (agree ? "agrees" : "DISAGREES") << "\n";
      return kOk;
    }

    if (*decompose_cmd) {
      PLGraph g = load_one(decompose_file);
      require_valid(g);
      ChainDecomposition d = dyadic_decompose(g, depth);
      json out = io::encode(d);
      out["verified"] = verify_decomposition(g, d);
      std::cout << out.dump(2) << "\n";
      return kOk;
    }

    if (*export_cmd) {
      for (const auto& p : io::export_fixtures(export_dir)) std::cout << p << "\n";
      return kOk;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kParse;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis violated: " << e.what() << "\n";
    return kHypothesis;
  } catch (const PreconditionError& e) {
    std::cerr << "invalid graph: " << e.what() << "\n";
    return kInvalid;
  } catch (const AreaError& e) {
    std::cerr << "invalid graph: " << e.what() << "\n";
    return kInvalid;
  } catch (const BudgetError& e) {
    std::cerr << "budget exceeded: " << e.what() << "\n";
    return kBudget;
  } catch (const std::invalid_argument& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kParse;
  }
  return kOk;
}
