#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "ehc/harness.hpp"
#include "ehc/io.hpp"
#include "ehc/keys.hpp"
#include "ehc/recognizers.hpp"
#include "ehc/smooth.hpp"

namespace {

using namespace ehc;

Ordering parse_ordering(const std::string& csv, int n) {
  Ordering o = ordering_from_string(csv);
  if (o.size() != static_cast<size_t>(n))
    throw std::invalid_argument("ordering length does not match the tournament");
  return o;
}

std::vector<VertexMask> sets_from_partition(const std::string& text, int n) {
  std::vector<VertexMask> sets;
  for (const auto& line : partition_from_text(text)) {
    VertexMask m = 0;
    for (int v : line) {
      if (v < 0 || v >= n) throw std::invalid_argument("partition: vertex index out of range");
      m |= bit(v);
    }
    sets.push_back(m);
  }
  return sets;
}

std::vector<int> parse_bits(const std::string& s) {
  std::vector<int> w;
  for (char c : s) {
    if (c != '0' && c != '1') throw std::invalid_argument("w must be a 0/1 string");
    w.push_back(c - '0');
  }
  return w;
}

// Structure file: tournament text, then "c", "lambda", "w", "delta" and "set"
// lines (vertices 1-based, sets in w order, delta one value per 1-entry).
struct StructureFile {
  Tournament host{0};
  SmoothStructure chi;
  std::map<int, int> delta;
};

StructureFile parse_structure(const std::string& text) {
  std::istringstream in(text);
  std::string line, n_line, bits_line;
  if (!std::getline(in, n_line) || !std::getline(in, bits_line))
    throw std::invalid_argument("structure file: missing tournament header");
  StructureFile sf;
  sf.host = tournament_from_text(n_line + "\n" + bits_line + "\n");
  std::vector<int> deltas;
  std::string sets_text;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key) || key[0] == '#') continue;
    if (key == "c") {
      std::string r;
      ls >> r;
      sf.chi.c = Rational::parse(r);
    } else if (key == "lambda") {
      std::string r;
      ls >> r;
      sf.chi.lambda = Rational::parse(r);
    } else if (key == "w") {
      std::string bits;
      ls >> bits;
      sf.chi.w = parse_bits(bits);
    } else if (key == "delta") {
      int d;
      while (ls >> d) deltas.push_back(d);
    } else if (key == "set") {
      sets_text += line.substr(4) + "\n";
    } else {
      throw std::invalid_argument("structure file: unknown key '" + key + "'");
    }
  }
  sf.chi.sets = sets_from_partition(sets_text, sf.host.size());
  size_t next = 0;
  for (size_t i = 0; i < sf.chi.w.size(); ++i)
    if (sf.chi.w[i] == 1) {
      if (next >= deltas.size())
        throw std::invalid_argument("structure file: delta has too few entries");
      sf.delta[static_cast<int>(i)] = deltas[next++];
    }
  if (next != deltas.size())
    throw std::invalid_argument("structure file: delta has too many entries");
  return sf;
}

int cmd_recognize(const std::string& file, const std::string& grammar_tag_str,
                  const std::string& ordering_csv) {
  Tournament t = tournament_from_text(read_file(file));
  std::optional<Ordering> theta;
  if (!ordering_csv.empty()) theta = parse_ordering(ordering_csv, t.size());
  auto w = recognize_decomposition(t, grammar_from_tag(grammar_tag_str), theta);
  if (!w) {
    std::cout << "null\n";
    return 0;
  }
  std::cout << witness_to_json(*w) << "\n";
  return 0;
}

int cmd_build_key(const std::string& flavor, const std::string& n_file, const std::string& g_file,
                  const std::string& n_ordering, const std::string& g_ordering,
                  const std::string& out) {
  Tournament n_host = tournament_from_text(read_file(n_file));
  std::optional<Ordering> n_theta;
  if (!n_ordering.empty()) n_theta = parse_ordering(n_ordering, n_host.size());

  RecognizeOptions opt;
  opt.require_regular = true;
  KeyTournament key = [&] {
    if (flavor == "gk6") {
      auto nd = recognize_decomposition(n_host, Grammar::CentralTriangularGalaxy, n_theta, opt);
      if (!nd) throw std::runtime_error("input is not a regular central triangular galaxy");
      return build_key_GK6(n_host, *nd);
    }
    auto nd = recognize_decomposition(n_host, Grammar::SuperNebula, n_theta, opt);
    if (!nd) throw std::runtime_error("base input is not a regular super nebula");
    if (g_file.empty()) throw std::runtime_error("nebula-galaxy flavor needs a gadget file");
    Tournament g = tournament_from_text(read_file(g_file));
    std::optional<Ordering> alpha;
    if (!g_ordering.empty()) alpha = parse_ordering(g_ordering, g.size());
    auto gd = recognize_decomposition(g, Grammar::DeltaGalaxy, alpha, opt);
    if (!gd) throw std::runtime_error("gadget input is not a regular one-triangle galaxy");
    return build_key(n_host, *nd, g, gd->ordering);
  }();

  write_file(out, tournament_to_text(key.K));

  nlohmann::ordered_json j;
  j["flavor"] = flavor;
  j["size"] = key.K.size();
  nlohmann::ordered_json base = nlohmann::ordered_json::array();
  for (int v : key.base_vertices) base.push_back(v + 1);
  j["base_vertices"] = base;
  nlohmann::ordered_json gads = nlohmann::ordered_json::array();
  for (const auto& g : key.gadgets) {
    nlohmann::ordered_json gj;
    gj["triplet"] = {g.triplet[0] + 1, g.triplet[1] + 1, g.triplet[2] + 1};
    nlohmann::ordered_json vs = nlohmann::ordered_json::array();
    for (int v : g.vertices) vs.push_back(v + 1);
    gj["vertices"] = vs;
    gads.push_back(gj);
  }
  j["gadgets"] = gads;
  nlohmann::ordered_json removed = nlohmann::ordered_json::array();
  for (auto [u, v] : key.removed_arcs) removed.push_back({u + 1, v + 1});
  j["undetermined_arcs"] = removed;
  j["witness"] = nlohmann::ordered_json::parse(witness_to_json(key.decomp));
  write_file(out + ".json", j.dump(2) + "\n");
  std::cout << "wrote " << out << " and " << out << ".json\n";
  return 0;
}

int cmd_verify_smooth(const std::string& t_file, const std::string& part_file,
                      const std::string& c_str, const std::string& lambda_str,
                      const std::string& w_bits) {
  Tournament t = tournament_from_text(read_file(t_file));
  SmoothStructure chi;
  chi.c = Rational::parse(c_str);
  chi.lambda = Rational::parse(lambda_str);
  chi.w = parse_bits(w_bits);
  chi.sets = sets_from_partition(read_file(part_file), t.size());
  SmoothReport rep = verify_smooth(t, chi);
  if (rep.ok()) {
    std::cout << "ok\n";
    return 0;
  }
  for (const auto& v : rep.violations) std::cout << v << "\n";
  return 1;
}

int cmd_embed(const std::string& structure_file, const std::string& mutant_file) {
  StructureFile sf = parse_structure(read_file(structure_file));
  PartialDigraph source = digraph_from_text(read_file(mutant_file));
  auto f = find_well_contained(sf.host, sf.chi, sf.delta, source, Ordering::identity(source.size()));
  if (!f) {
    std::cout << "null\n";
    return 1;
  }
  nlohmann::ordered_json j;
  for (int v = 0; v < source.size(); ++v) j[std::to_string(v + 1)] = (*f)[v] + 1;
  std::cout << j.dump() << "\n";
  return 0;
}

int cmd_experiment(const std::string& config_file) {
  ExperimentConfig cfg = ExperimentConfig::parse(read_file(config_file));
  run_experiment(cfg);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"tournament structure toolkit"};
  app.require_subcommand(1);

  std::string file, grammar = "galaxy", ordering;
  auto* rec = app.add_subcommand("recognize", "decompose a tournament under a grammar");
  rec->add_option("--grammar", grammar, "grammar tag (e.g. galaxy, super-nebula, gk6)");
  rec->add_option("--ordering", ordering, "comma-separated 1-based vertex order");
  rec->add_option("file", file, "tournament file")->required();

  std::string flavor = "nebula-galaxy", n_file, g_file, n_ord, g_ord, out = "key.txt";
  auto* bk = app.add_subcommand("build-key", "compose a key tournament");
  bk->add_option("--flavor", flavor, "nebula-galaxy or gk6")
      ->check(CLI::IsMember({"nebula-galaxy", "gk6"}));
  bk->add_option("--n-ordering", n_ord, "ordering of the base input");
  bk->add_option("--g-ordering", g_ord, "ordering of the gadget input");
  bk->add_option("--out", out, "output tournament file (sidecar: <out>.json)");
  bk->add_option("n_file", n_file, "base tournament file")->required();
  bk->add_option("g_file", g_file, "gadget tournament file (nebula-galaxy flavor)");

  std::string c_str, lambda_str, w_bits, part_file;
  auto* vs = app.add_subcommand("verify-smooth", "check a smooth structure");
  vs->add_option("--c", c_str, "density constant, e.g. 1/4")->required();
  vs->add_option("--lambda", lambda_str, "smoothness slack, e.g. 1/8")->required();
  vs->add_option("--w", w_bits, "0/1 pattern, e.g. 010")->required();
  vs->add_option("tournament", file, "tournament file")->required();
  vs->add_option("partition", part_file, "one set per line, 1-based")->required();

  std::string structure_file, mutant_file;
  auto* em = app.add_subcommand("embed", "well-contain a mutant into a structure");
  em->add_option("structure", structure_file, "structure file")->required();
  em->add_option("mutant", mutant_file, "partial digraph file")->required();

  std::string config_file;
  auto* ex = app.add_subcommand("experiment", "run a seeded experiment sweep");
  ex->add_option("--config", config_file, "flat key-value config file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (rec->parsed()) return cmd_recognize(file, grammar, ordering);
    if (bk->parsed()) return cmd_build_key(flavor, n_file, g_file, n_ord, g_ord, out);
    if (vs->parsed()) return cmd_verify_smooth(file, part_file, c_str, lambda_str, w_bits);
    if (em->parsed()) return cmd_embed(structure_file, mutant_file);
    if (ex->parsed()) return cmd_experiment(config_file);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
