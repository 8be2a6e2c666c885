// Copyright 2026 The TopTree Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <iterator>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "toptree/codec.hpp"
#include "toptree/nav.hpp"
#include "toptree/random_tree.hpp"
#include "toptree/top_tree.hpp"
#include "toptree/tree.hpp"
#include "toptree/xml.hpp"

namespace toptree::cli {
namespace {

namespace fs = std::filesystem;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<std::uint8_t> read_bytes(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const fs::path& path, const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw UsageError("cannot write " + path.string());
}

enum class InputFormat { kAuto, kXml, kEvents };

LabelledTree read_tree(const fs::path& path, InputFormat format) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot open " + path.string());
  if (format == InputFormat::kAuto) {
    in >> std::ws;
    format = in.peek() == '<' ? InputFormat::kXml : InputFormat::kEvents;
  }
  return format == InputFormat::kXml ? parse_xml(in) : read_event_text(in);
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now() - since)
      .count();
}

struct CompressArgs {
  std::string input;
  std::string output;
  std::string combiner = "classic";
  double ratio = kDefaultMinMergeRatio;
  std::uint64_t seed = kDefaultHashSeed;
  bool stats = false;
  InputFormat format = InputFormat::kAuto;
};

BuildOptions build_options(double ratio, std::uint64_t seed) {
  BuildOptions opts;
  opts.min_merge_ratio = ratio;
  opts.hash_seed = seed;
  return opts;
}

CombinerKind combiner_kind(const std::string& name) {
  auto kind = parse_combiner_kind(name);
  if (!kind) throw UsageError("unknown combiner " + name);
  return *kind;
}

void compress_cmd(const CompressArgs& a, std::ostream& out) {
  const LabelledTree tree = read_tree(a.input, a.format);
  const BuildResult built = build_top_tree(
      tree, combiner_kind(a.combiner), build_options(a.ratio, a.seed));
  const std::vector<std::uint8_t> bytes = encode_file(built.dag, tree.label_table());
  write_bytes(a.output, bytes);
  if (!a.stats) return;
  const DagStats dag = dag_stats(built.dag);
  const std::uint64_t baseline = succinct_size_bytes(tree);
  out << "nodes=" << tree.size() << '\n'
      << "height=" << built.height << '\n'
      << "top_tree_nodes=" << 2 * tree.size() - 1 << '\n'
      << "dag_nodes=" << dag.nodes << '\n'
      << "dag_edges=" << dag.edges << '\n'
      << "iterations=" << built.iterations.size() << '\n'
      << "output_bytes=" << bytes.size() << '\n'
      << "baseline_bytes=" << baseline << '\n'
      << "ratio=" << std::setprecision(6)
      << static_cast<double>(bytes.size()) / static_cast<double>(baseline)
      << '\n';
}

void decompress_cmd(const std::string& input, const std::string& output) {
  const std::vector<std::uint8_t> bytes = read_bytes(input);
  const DecodedFile file = decode_file(bytes);
  const LabelledTree tree = decompress(file.dag, file.labels);
  std::ofstream out(output, std::ios::binary);
  if (!out) throw UsageError("cannot write " + output);
  write_nested_xml(out, tree);
  out << '\n';
  if (!out) throw UsageError("cannot write " + output);
}

void bench_cmd(const std::string& dir, double ratio, std::uint64_t seed,
               std::ostream& out, std::ostream& err) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw UsageError("not a directory: " + dir);
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && entry.path().extension() == ".xml") {
      files.push_back(entry.path());
    }
  }
  std::sort(files.begin(), files.end());

  out << "file,nodes,succinct_bytes,classic_bytes,repair_bytes,parse_ms,"
         "classic_ms,repair_ms,decode_ms\n";
  const BuildOptions opts = build_options(ratio, seed);
  for (const fs::path& path : files) {
    LabelledTree tree;
    auto start = std::chrono::steady_clock::now();
    try {
      tree = parse_xml_file(path);
    } catch (const std::exception& e) {
      err << "warning: skipping " << path.filename().string() << ": "
          << e.what() << '\n';
      continue;
    }
    const double parse_ms = elapsed_ms(start);

    start = std::chrono::steady_clock::now();
    const auto classic = encode_file(
        build_top_tree(tree, CombinerKind::kClassic, opts).dag, tree.label_table());
    const double classic_ms = elapsed_ms(start);

    start = std::chrono::steady_clock::now();
    const auto repair = encode_file(
        build_top_tree(tree, CombinerKind::kRepair, opts).dag, tree.label_table());
    const double repair_ms = elapsed_ms(start);

    start = std::chrono::steady_clock::now();
    const DecodedFile decoded = decode_file(repair);
    const LabelledTree back = decompress(decoded.dag, decoded.labels);
    const double decode_ms = elapsed_ms(start);
    if (!(back == tree)) {
      throw std::logic_error("round trip failed for " + path.string());
    }

    out << path.filename().string() << ',' << tree.size() << ','
        << succinct_size_bytes(tree) << ',' << classic.size() << ','
        << repair.size() << ',' << std::fixed << std::setprecision(3)
        << parse_ms << ',' << classic_ms << ',' << repair_ms << ','
        << decode_ms << '\n'
        << std::defaultfloat;
  }
}

struct RandomArgs {
  std::vector<std::size_t> sizes;
  unsigned min_exp = 10;
  unsigned max_exp = 18;
  std::uint32_t sigma = 2;
  std::size_t trials = 100;
  std::uint64_t seed = 1;
  std::string combiner = "classic";
  unsigned threads = 0;
};

void random_cmd(const RandomArgs& a, std::ostream& out) {
  std::vector<std::size_t> sizes = a.sizes;
  if (sizes.empty()) {
    if (a.min_exp > a.max_exp || a.max_exp > 40) {
      throw UsageError("bad exponent range");
    }
    for (unsigned e = a.min_exp; e <= a.max_exp; ++e) sizes.push_back(std::size_t{1} << e);
  }
  for (std::size_t n : sizes) {
    if (n < 2) throw UsageError("sizes must be at least 2");
  }
  if (a.trials == 0 || a.sigma == 0) throw UsageError("trials and sigma must be positive");
  RatioOptions opts;
  opts.sigma = a.sigma;
  opts.trials = a.trials;
  opts.seed = a.seed;
  opts.combiner = combiner_kind(a.combiner);
  opts.threads = a.threads;
  out << "n,trials,mean_edges,ratio\n";
  for (const RatioRow& row : ratio_experiment(sizes, opts)) {
    out << row.n << ',' << row.trials << ',' << std::setprecision(10)
        << row.mean_edges << ',' << row.ratio << '\n';
  }
}

void traverse_cmd(const std::string& input, const std::string& script,
                  std::ostream& out) {
  std::ifstream ops(script);
  if (!ops) throw UsageError("cannot open " + script);
  const std::vector<std::uint8_t> bytes = read_bytes(input);
  const DecodedFile file = decode_file(bytes);
  NavCursor cursor = NavCursor::at_root(file.dag);
  const auto move_result = [&](bool moved) {
    out << (moved ? file.labels[cursor.label()] : std::string("none")) << '\n';
  };
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(ops, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    const std::string op =
        line.substr(first, line.find_last_not_of(" \t\r") - first + 1);
    if (op == "first_child") {
      move_result(cursor.first_child());
    } else if (op == "next_sibling") {
      move_result(cursor.next_sibling());
    } else if (op == "parent") {
      move_result(cursor.parent());
    } else if (op == "is_leaf") {
      out << (cursor.is_leaf() ? "true" : "false") << '\n';
    } else if (op == "is_last_child") {
      out << (cursor.is_last_child() ? "true" : "false") << '\n';
    } else if (op == "label") {
      out << file.labels[cursor.label()] << '\n';
    } else {
      throw UsageError("line " + std::to_string(line_no) + ": unknown op '" +
                       op + "'");
    }
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Top tree compression for ordered labelled trees",
               args.empty() ? "toptree" : args.front()};
  app.require_subcommand(1);

  const std::map<std::string, InputFormat> formats{
      {"auto", InputFormat::kAuto},
      {"xml", InputFormat::kXml},
      {"events", InputFormat::kEvents}};

  CompressArgs compress;
  auto* c = app.add_subcommand("compress", "Compress an XML or event file");
  c->add_option("input", compress.input, "XML or event-format input")->required();
  c->add_option("output", compress.output, "Encoded output file")->required();
  c->add_option("--combiner", compress.combiner, "classic or repair")
      ->check(CLI::IsMember({"classic", "repair"}));
  c->add_option("--ratio", compress.ratio, "Minimum merge ratio")
      ->check(CLI::PositiveNumber);
  c->add_option("--seed", compress.seed, "Cluster hash seed");
  c->add_flag("--stats", compress.stats, "Print key=value statistics");
  c->add_option("--format", compress.format, "Input format, auto-detected by default")
      ->transform(CLI::CheckedTransformer(formats).description(""))
      ->option_text("auto|xml|events");

  std::string d_input, d_output;
  auto* d = app.add_subcommand("decompress", "Decode to nested empty-tag XML");
  d->add_option("input", d_input)->required();
  d->add_option("output", d_output)->required();

  std::string bench_dir;
  double bench_ratio = kDefaultMinMergeRatio;
  std::uint64_t bench_seed = kDefaultHashSeed;
  auto* b = app.add_subcommand("bench", "Per-file sizes and timings as CSV");
  b->add_option("dir", bench_dir, "Directory of .xml files")->required();
  b->add_option("--ratio", bench_ratio)->check(CLI::PositiveNumber);
  b->add_option("--seed", bench_seed);

  RandomArgs random;
  auto* r = app.add_subcommand("random", "Random-tree compression ratio experiment");
  r->add_option("--sizes", random.sizes, "Explicit tree sizes")->delimiter(',');
  r->add_option("--min-exp", random.min_exp, "Smallest size as a power of two");
  r->add_option("--max-exp", random.max_exp, "Largest size as a power of two");
  r->add_option("--sigma", random.sigma, "Alphabet size");
  r->add_option("--trials", random.trials, "Trees per size");
  r->add_option("--seed", random.seed);
  r->add_option("--combiner", random.combiner)
      ->check(CLI::IsMember({"classic", "repair"}));
  r->add_option("--threads", random.threads, "0 uses every core");

  std::string t_input, t_script;
  auto* t = app.add_subcommand("traverse", "Run a navigation script");
  t->add_option("input", t_input, "Encoded file")->required();
  t->add_option("script", t_script, "One operation per line")->required();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    if (!reversed.empty()) reversed.pop_back();
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (c->parsed()) {
      compress_cmd(compress, out);
    } else if (d->parsed()) {
      decompress_cmd(d_input, d_output);
    } else if (b->parsed()) {
      bench_cmd(bench_dir, bench_ratio, bench_seed, out, err);
    } else if (r->parsed()) {
      random_cmd(random, out);
    } else if (t->parsed()) {
      traverse_cmd(t_input, t_script, out);
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const XmlError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const TreeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFormat;
  } catch (const DagError& e) {
    err << "error: " << e.what() << '\n';
    return kExitFormat;
  }
  return kExitOk;
}

}  // namespace toptree::cli
