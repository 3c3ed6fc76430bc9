// daestruct: structural analysis of DAE systems from the command line.
//
//   daestruct analyze --input sys.dae [--method auto] [--output text]
//   daestruct btf     --input sys.sig
//   daestruct bench   --blocks 8 --block-size 8 --reps 3 --seed 1
//   daestruct verify  --n 4 --cases 200 --seed 3
//
// Exit codes: 0 success, 1 usage or input error (or a failed verification),
// 2 structurally singular input.

#include <unistd.h>

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "daestruct/analysis.hpp"
#include "daestruct/dae_text.hpp"
#include "daestruct/oracle.hpp"

namespace {

using namespace daestruct;

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitSingular = 2;

struct Input {
  SignatureMatrix sigma;
  Names names;
};

std::string read_all(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidArgument("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string infer_format(const std::string& path, const std::string& text) {
  auto ends_with = [&](const char* suffix) {
    const std::string s(suffix);
    return path.size() >= s.size() && path.compare(path.size() - s.size(), s.size(), s) == 0;
  };
  if (ends_with(".dae")) return "dae";
  if (ends_with(".sig") || ends_with(".json")) return "sig";
  const auto first = text.find_first_not_of(" \t\r\n");
  return first != std::string::npos && text[first] == '{' ? "sig" : "dae";
}

Input load(const std::string& path, std::string format) {
  const std::string text = read_all(path);
  if (format.empty()) format = infer_format(path, text);
  if (format == "dae") {
    const DaeSystem sys = parse_dae(text);
    Names names;
    names.variables = sys.vars;
    for (const auto& eq : sys.equations) names.equations.push_back(eq.name);
    return Input{signature_of(sys), std::move(names)};
  }
  auto sigma = read_sigfile(text);
  auto names = Names::defaults(sigma.size());
  return Input{std::move(sigma), std::move(names)};
}

std::vector<Order> parse_int_list(const std::string& s) {
  std::vector<Order> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    Order v = 0;
    try {
      v = std::stoll(item, &used);
    } catch (const std::exception&) {
      throw InvalidArgument("not an integer list: '" + s + "'");
    }
    if (used != item.size()) throw InvalidArgument("not an integer list: '" + s + "'");
    out.push_back(v);
  }
  return out;
}

bool use_color() {
  return std::getenv("DAESTRUCT_NO_COLOR") == nullptr && ::isatty(STDOUT_FILENO) == 1;
}

struct AnalyzeOptions {
  std::string input;
  std::string format;
  std::string method = "auto";
  std::string output = "json";
  std::string param;
  bool parallel = false;
};

int cmd_analyze(const AnalyzeOptions& o) {
  const Input in = load(o.input, o.format);
  const Exec exec = o.parallel ? Exec::parallel : Exec::serial;
  AnalysisReport report;
  if (!o.param.empty()) {
    if (parse_method(o.method) == Method::block) {
      throw InvalidArgument("--param is only supported with --method global or auto");
    }
    auto p = parse_int_list(o.param);
    if (static_cast<Index>(p.size()) != in.sigma.size()) {
      throw DimensionMismatch("--param has " + std::to_string(p.size()) + " entries, expected " +
                              std::to_string(in.sigma.size()));
    }
    report = analyze_with_param(in.sigma, ParamVector(std::move(p)), exec);
  } else {
    report = analyze(in.sigma, parse_method(o.method), exec);
  }
  if (o.output == "text") {
    std::cout << report_to_text(in.sigma, report, in.names, use_color());
  } else {
    std::cout << report_to_json(report, in.names) << '\n';
  }
  return kExitOk;
}

int cmd_btf(const std::string& input, const std::string& format) {
  const Input in = load(input, format);
  std::cout << write_block_structure(fine_btf(in.sigma)) << '\n';
  return kExitOk;
}

struct BenchOptions {
  Index blocks = 4;
  Index block_size = 8;
  double density = 0.3;
  Order sigma_min = 0;
  Order sigma_max = 3;
  std::uint64_t seed = 1;
  int reps = 3;
};

int cmd_bench(const BenchOptions& o) {
  if (o.reps < 1) throw InvalidArgument("--reps must be positive");
  struct Row {
    std::string global;
    std::string block;
  };
  std::vector<Row> rows(o.reps);
  std::vector<std::string> errors(o.reps);

  // Repetitions are independent; rows are buffered and printed in order.
#pragma omp parallel for schedule(dynamic)
  for (int rep = 0; rep < o.reps; ++rep) {
    try {
      oracle::GenSpec spec;
      spec.blocks = o.blocks;
      spec.block_size = o.block_size;
      spec.density = o.density;
      spec.sigma_min = o.sigma_min;
      spec.sigma_max = o.sigma_max;
      spec.seed = o.seed + static_cast<std::uint64_t>(rep);
      const auto inst = oracle::gen_block_sigma(spec);

      using clock = std::chrono::steady_clock;
      const auto t0 = clock::now();
      const auto global = smallest_offsets(inst.sigma);
      const auto t1 = clock::now();
      const auto block = block_smallest_offsets(inst.sigma, inst.structure);
      const auto t2 = clock::now();
      const auto block_total = total_stats(block.block_stats);
      const bool equal = global.offsets == block.offsets;

      auto line = [&](const char* method, const SolveStats& s, auto ns) {
        std::ostringstream ss;
        ss << inst.sigma.size() << ',' << o.blocks << ',' << o.block_size << ',' << spec.seed
           << ',' << method << ',' << s.phi_applications << ',' << s.matching_ops << ','
           << std::chrono::duration_cast<std::chrono::nanoseconds>(ns).count() << ','
           << (equal ? "true" : "false");
        return ss.str();
      };
      rows[rep] = Row{line("global", global.stats, t1 - t0), line("block", block_total, t2 - t1)};
    } catch (const std::exception& e) {
      errors[rep] = e.what();
    }
  }
  for (const auto& e : errors) {
    if (!e.empty()) throw InvalidArgument(e);
  }

  std::cout << "n,blocks,block_size,seed,method,phi_applications,matching_ops,wall_ns,equal\n";
  bool all_equal = true;
  for (const auto& r : rows) {
    std::cout << r.global << '\n' << r.block << '\n';
    all_equal = all_equal && r.block.ends_with("true");
  }
  if (!all_equal) {
    std::cerr << "daestruct: global and block offsets differ on some instance\n";
    return kExitInput;
  }
  return kExitOk;
}

struct VerifyOptions {
  Index n = 4;
  Index blocks = 0;
  Index block_size = 0;
  int cases = 200;
  std::uint64_t seed = 1;
  double density = 0.4;
  Order sigma_max = 3;
};

// Returns an empty string when every check passes on sigma.
std::string verify_instance(const SignatureMatrix& sigma, const BlockStructure* given) {
  const auto brute = oracle::brute_hvt(sigma);
  MatchingStats ms;
  const Transversal hvt = find_hvt(sigma, &ms);
  if (transversal_value(sigma, hvt) != brute.value) return "HVT value differs from enumeration";

  const auto global = smallest_offsets(sigma);
  if (global.stats.phi_applications > l1_norm(global.offsets.c) + 1) {
    return "iteration bound exceeded";
  }
  if (sigma.size() <= oracle::kMaxBruteDual) {
    if (oracle::brute_smallest_dual(sigma).offsets != global.offsets) {
      return "offsets differ from exhaustive dual search";
    }
  } else if (!oracle::certify_smallest_by_subsets(sigma, global.offsets, brute.value)) {
    return "offsets fail the subset-descent minimality certificate";
  }

  const BlockStructure bs = given ? *given : fine_btf(sigma);
  const auto block = block_smallest_offsets(sigma, bs);
  if (block.offsets != global.offsets) return "block and global offsets differ";
  return {};
}

int cmd_verify(const VerifyOptions& o) {
  const bool block_mode = o.blocks > 0 || o.block_size > 0;
  if (block_mode && (o.blocks < 1 || o.block_size < 1)) {
    throw InvalidArgument("--blocks and --block-size must both be positive");
  }
  const Index n = block_mode ? o.blocks * o.block_size : o.n;
  if (n < 1) throw InvalidArgument("--n must be positive");
  if (n > oracle::kMaxBruteHvt) throw TooLarge(n, oracle::kMaxBruteHvt);
  if (o.cases < 1) throw InvalidArgument("--cases must be positive");

  int agree = 0;
  for (int k = 0; k < o.cases; ++k) {
    oracle::GenSpec spec;
    spec.n = n;
    spec.blocks = o.blocks;
    spec.block_size = o.block_size;
    spec.density = o.density;
    spec.sigma_max = o.sigma_max;
    spec.seed = o.seed + static_cast<std::uint64_t>(k);
    std::string why;
    SignatureMatrix sigma(1, {{0, 0, 0}});
    if (block_mode) {
      auto inst = oracle::gen_block_sigma(spec);
      sigma = inst.sigma;
      why = verify_instance(sigma, &inst.structure);
    } else {
      sigma = oracle::gen_sigma(spec);
      why = verify_instance(sigma, nullptr);
    }
    if (!why.empty()) {
      std::cout << agree << "/" << o.cases << " agree\n";
      std::cout << "mismatch on case " << k << " (seed " << spec.seed << "): " << why << '\n';
      std::cout << write_sigfile(sigma) << '\n';
      return kExitInput;
    }
    ++agree;
  }
  std::cout << agree << "/" << o.cases << " agree\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structural analysis of differential-algebraic equation systems"};
  app.require_subcommand(1);

  AnalyzeOptions ao;
  auto* analyze_cmd = app.add_subcommand("analyze", "Offsets, structural index and Jacobian pattern");
  analyze_cmd->add_option("--input,-i", ao.input, "DAE or signature file ('-' for stdin)")->required();
  analyze_cmd->add_option("--format", ao.format, "dae or sig (default: from extension)")
      ->check(CLI::IsMember({"dae", "sig"}));
  analyze_cmd->add_option("--method", ao.method, "global, block or auto")
      ->check(CLI::IsMember({"global", "block", "auto"}));
  analyze_cmd->add_option("--output", ao.output, "json or text")->check(CLI::IsMember({"json", "text"}));
  analyze_cmd->add_option("--param", ao.param, "comma-separated lower bounds on d (global solve)");
  analyze_cmd->add_flag("--parallel", ao.parallel, "use the OpenMP offset kernels");

  std::string btf_input, btf_format;
  auto* btf_cmd = app.add_subcommand("btf", "Fine block triangular form as JSON");
  btf_cmd->add_option("--input,-i", btf_input, "DAE or signature file ('-' for stdin)")->required();
  btf_cmd->add_option("--format", btf_format, "dae or sig")->check(CLI::IsMember({"dae", "sig"}));

  BenchOptions bo;
  auto* bench_cmd = app.add_subcommand("bench", "Compare global and block solving on generated instances");
  bench_cmd->add_option("--blocks", bo.blocks, "number of diagonal blocks")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--block-size", bo.block_size, "size of each block")->check(CLI::PositiveNumber);
  bench_cmd->add_option("--density", bo.density, "fill probability")->check(CLI::Range(0.0, 1.0));
  bench_cmd->add_option("--sigma-min", bo.sigma_min, "smallest generated order")->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--sigma-max", bo.sigma_max, "largest generated order")->check(CLI::NonNegativeNumber);
  bench_cmd->add_option("--seed", bo.seed, "base seed; repetition k uses seed + k");
  bench_cmd->add_option("--reps", bo.reps, "repetitions")->check(CLI::PositiveNumber);

  VerifyOptions vo;
  auto* verify_cmd = app.add_subcommand("verify", "Cross-check the solvers against exhaustive oracles");
  verify_cmd->add_option("--n", vo.n, "matrix size (at most 8)");
  verify_cmd->add_option("--blocks", vo.blocks, "generate block triangular instances");
  verify_cmd->add_option("--block-size", vo.block_size, "block size for --blocks");
  verify_cmd->add_option("--cases", vo.cases, "number of instances");
  verify_cmd->add_option("--seed", vo.seed, "base seed; case k uses seed + k");
  verify_cmd->add_option("--density", vo.density, "fill probability")->check(CLI::Range(0.0, 1.0));
  verify_cmd->add_option("--sigma-max", vo.sigma_max, "largest generated order")->check(CLI::NonNegativeNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  const std::string where = analyze_cmd->parsed() ? ao.input : btf_cmd->parsed() ? btf_input : "";
  try {
    if (analyze_cmd->parsed()) return cmd_analyze(ao);
    if (btf_cmd->parsed()) return cmd_btf(btf_input, btf_format);
    if (bench_cmd->parsed()) {
      if (bo.sigma_min > bo.sigma_max) throw InvalidArgument("--sigma-min exceeds --sigma-max");
      return cmd_bench(bo);
    }
    if (verify_cmd->parsed()) return cmd_verify(vo);
  } catch (const Error& e) {
    const bool singular = e.kind() == ErrorKind::StructurallySingular ||
                          e.kind() == ErrorKind::EmptyColumn;
    std::cerr << "daestruct: ";
    if (e.kind() == ErrorKind::EmptyColumn) {
      std::cerr << StructurallySingular().what() << " (" << e.what() << ")\n";
      return kExitSingular;
    }
    if (!where.empty() && e.kind() == ErrorKind::SyntaxError) std::cerr << where << ':';
    std::cerr << e.what() << '\n';
    return singular ? kExitSingular : kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "daestruct: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}
