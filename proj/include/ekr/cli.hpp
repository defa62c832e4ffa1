#pragma once

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "catalog.hpp"
#include "cocliques.hpp"
#include "complements.hpp"
#include "corpus.hpp"
#include "dergraph.hpp"
#include "ekr_module.hpp"
#include "spectra.hpp"

namespace ekr::cli {

using nlohmann::json;

inline constexpr int schema_version = 1;

enum Exit : int { verified_true = 0, usage_error = 1, verified_false = 2 };

struct Result {
  int exit_code = verified_true;
  std::string out;
  std::string err;
};

struct usage_failure : ekr_error {
  using ekr_error::ekr_error;
};

inline json exact(Rational const &r) { return {{"kind", "exact"}, {"value", to_string(r)}}; }
inline json exact(long long v) { return exact(Rational(v)); }

/// Floats are rounded to ten significant digits so reports are byte-stable.
inline json inexact(double x)
{
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  double y = std::stod(buf);
  if (y == 0)
    y = 0;
  return {{"kind", "float"}, {"value", y}};
}

inline std::string read_file(std::string const &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw usage_failure("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string fnv1a_hex(std::string const &bytes)
{
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream ss;
  ss << std::hex << std::setw(16) << std::setfill('0') << h;
  return ss.str();
}

struct LoadedGroup {
  GroupTable G;
  json descriptor;
};

/// `family:params` from the catalog, or `@path` to a JSON group spec.
inline LoadedGroup load_group(std::string const &text)
{
  if (text.empty())
    throw usage_failure("--group is required");
  if (text.front() == '@') {
    auto path = text.substr(1);
    auto bytes = read_file(path);
    auto spec = parse_group_spec(bytes);
    LoadedGroup L{generate(spec), {}};
    L.descriptor = {{"file", path}, {"digest", fnv1a_hex(bytes)}};
    if (spec.name)
      L.descriptor["name"] = *spec.name;
    L.descriptor["degree"] = L.G.degree();
    L.descriptor["order"] = L.G.order();
    return L;
  }
  auto spec = parse_family(text);
  LoadedGroup L{family(spec), {}};
  L.descriptor = {{"family", family_string(spec)}, {"degree", L.G.degree()}, {"order", L.G.order()}};
  return L;
}

/// A coclique file is a JSON list of image arrays, or an object with
/// "elements" and an optional "one_based" flag.
inline ElementSet load_coclique(GroupTable const &G, std::string const &path)
{
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (json::parse_error const &e) {
    throw usage_failure(path + ": " + e.what());
  }
  bool one_based = false;
  json list = doc;
  if (doc.is_object()) {
    if (!doc.contains("elements"))
      throw usage_failure(path + ": missing \"elements\"");
    list = doc["elements"];
    one_based = doc.value("one_based", false);
  }
  if (!list.is_array())
    throw usage_failure(path + ": expected a list of image arrays");
  ElementSet S;
  for (auto const &row : list) {
    if (!row.is_array() || row.size() != G.degree())
      throw usage_failure(path + ": every element needs " + std::to_string(G.degree()) + " images");
    std::vector<point_t> images;
    for (auto const &v : row) {
      if (!v.is_number_integer())
        throw usage_failure(path + ": images must be integers");
      long long x = v.get<long long>() - (one_based ? 1 : 0);
      if (x < 0 || x >= static_cast<long long>(G.degree()))
        throw usage_failure(path + ": image out of range");
      images.push_back(static_cast<point_t>(x));
    }
    if (!Permutation::is_bijection(images))
      throw usage_failure(path + ": element is not a permutation");
    auto idx = G.find(Permutation(images));
    if (!idx)
      throw usage_failure(path + ": element not in the group");
    S.push_back(*idx);
  }
  std::sort(S.begin(), S.end());
  if (std::adjacent_find(S.begin(), S.end()) != S.end())
    throw usage_failure(path + ": repeated element");
  return S;
}

inline std::string cycles(GroupTable const &G, index_t g) { return G.element(g).cycle_string(); }

inline json cycle_list(GroupTable const &G, std::span<index_t const> xs)
{
  json out = json::array();
  for (index_t x : xs)
    out.push_back(cycles(G, x));
  return out;
}

struct Options {
  std::string group;
  std::string out = "json";
  std::size_t limit = 100;
  bool exhaustive = false;
  unsigned workers = 1;
  std::uint64_t budget = 100'000'000;
  std::uint64_t seed = 0;
  std::string coclique;
  bool timings = false;
};

struct Report {
  json payload = json::object();
  json verdicts = json::object();
  int exit_code = verified_true;
};

inline Report cmd_info(GroupTable const &G)
{
  Report R;
  auto C = conjugacy_classes(G);
  auto D = derangements(G);
  bool transitive = is_transitive(G);
  R.payload["transitive"] = transitive;
  R.payload["two_transitive"] = G.degree() >= 2 && is_2transitive(G);
  R.payload["class_count"] = C.count();
  R.payload["class_sizes"] = C.sizes;
  R.payload["derangement_count"] = D.d();
  R.payload["generators"] = cycle_list(G, G.generators());
  R.payload["stabilizer_order"] = point_stabilizer(G, 0).size();
  auto normals = regular_normal_subgroups(G, C);
  R.payload["regular_normal_subgroups"] = normals ? json(normals->size()) : json(nullptr);
  return R;
}

inline Report cmd_spectrum(GroupTable const &G)
{
  Report R;
  auto C = conjugacy_classes(G);
  auto D = derangements(G);
  auto rep = least_eigenvalue_report(G, C, D);
  auto M = class_sum_matrix(G, C, D);
  json rows = json::array();
  for (std::size_t i = 0; i < M.k; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < M.k; ++j)
      row.push_back(M.at(i, j));
    rows.push_back(row);
  }
  json spectrum = json::array();
  for (double x : rep.spectrum)
    spectrum.push_back(inexact(x));
  R.payload["d"] = rep.d;
  R.payload["lambda_star"] = exact(rep.lambda_star);
  R.payload["multiplicity"] = rep.multiplicity;
  R.payload["numeric_near"] = rep.numeric_near;
  R.payload["tolerance"] = inexact(rep.tolerance);
  R.payload["spectrum"] = spectrum;
  R.payload["class_sum_matrix"] = rows;
  R.verdicts["least_eigenvalue"] = to_string(rep.verdict);
  return R;
}

inline Report cmd_derangements(GroupTable const &G, std::string const &group_text)
{
  Report R;
  auto C = conjugacy_classes(G);
  auto D = derangements(G);
  json classes = json::array();
  for (std::size_t c = 0; c < C.count(); ++c)
    if (D.contains(C.representatives[c]))
      classes.push_back({{"representative", cycles(G, C.representatives[c])},
                         {"size", C.sizes[c]},
                         {"order", G.element_order(C.representatives[c])}});
  auto n = static_cast<long long>(G.degree());
  R.payload["d"] = D.d();
  R.payload["classes"] = classes;
  R.payload["degree_ratio"] = n > 1 ? exact(Rational(static_cast<long long>(D.d()), n - 1)) : json(nullptr);
  R.verdicts["n_minus_1_divides_d"] = n > 1 && D.d() % (n - 1) == 0;
  if (group_text.rfind("alt:", 0) == 0 && n >= 5 && n <= 8) {
    auto b = alt_degree_bound(static_cast<unsigned>(n));
    R.payload["alt_bound"] = {{"d_lower", b.d_lower}, {"threshold", b.threshold}};
    R.verdicts["alt_bound_holds"] = b.holds;
  }
  return R;
}

inline Report cmd_connectivity(GroupTable const &G)
{
  Report R;
  auto C = conjugacy_classes(G);
  auto D = derangements(G);
  auto cs = connectivity(G, D);
  R.payload["components"] = cs.component_count;
  R.payload["derangement_span_order"] = cs.generated.size();
  R.verdicts["connected"] = cs.is_connected;
  R.verdicts["disjoint_clique_union"] = is_disjoint_clique_union(G, D);
  R.verdicts["trivial_two_point_stabilizers"] = has_trivial_two_point_stabilizers(G);
  auto normals = regular_normal_subgroups(G, C);
  if (normals && !normals->empty() && is_2transitive(G)) {
    auto const &N = normals->front();
    auto flags = coset_derangement_profile(G, N);
    std::size_t with = 0;
    bool agree = true;
    for (auto const &f : flags) {
      with += f.direct;
      agree = agree && f.direct == f.centralizer;
    }
    auto gen = two_point_stabilizer_generation(G, D, N);
    R.payload["affine"] = {{"cosets", flags.size()},
                           {"cosets_with_derangements", with},
                           {"stabilizer_span_order", gen.stabilizer_span.size()}};
    R.verdicts["coset_flags_agree"] = agree;
    R.verdicts["two_point_generation_equal"] = gen.equal;
    if (!agree || !gen.equal)
      R.exit_code = verified_false;
  }
  return R;
}

inline Report cmd_ekr_check(GroupTable const &G, Options const &o)
{
  Report R;
  auto C = conjugacy_classes(G);
  auto D = derangements(G);
  if (!is_2transitive(G))
    throw usage_failure("ekr-check needs a 2-transitive group");
  auto cover = clique_cover(G, C, D);
  std::size_t t = G.order() / G.degree();

  auto over = max_cocliques(G, C, D, cover, CensusOptions{t + 1, 1, true, o.budget, o.workers, 0});
  auto census = max_cocliques(G, C, D, cover, CensusOptions{t, o.limit, o.exhaustive, o.budget, o.workers, o.seed});
  bool exhaustive = o.exhaustive && census.exhaustive_permitted;

  auto normals = regular_normal_subgroups(G, C);
  bool affine = normals && !normals->empty();
  auto reference = inner_distribution(G, C, point_stabilizer(G, 0));
  std::size_t module_ok = 0, inner_ok = 0, pattern_ok = 0, subgroups = 0, cosets = 0;
  for (auto const &S : census.found) {
    module_ok += module_check(G, S).holds;
    inner_ok += inner_distribution(G, C, S) == reference;
    if (affine)
      pattern_ok += coefficient_pattern_holds(G, S);
    auto cl = classify(G, S);
    subgroups += cl.is_subgroup;
    cosets += cl.is_coset_of_subgroup;
  }
  std::size_t kept = census.found.size();

  R.payload["target"] = t;
  R.payload["cover"] = {{"kind", to_string(census.cover)},
                        {"cells", census.cover_cells},
                        {"clique_size", census.clique_size}};
  R.payload["plus_one"] = {{"complete", over.complete},
                           {"found", over.total_found},
                           {"pruned_at_root", over.pruned_at_root}};
  R.payload["census"] = {{"mode", exhaustive ? "exhaustive" : "sampling"},
                         {"exhaustive_permitted", census.exhaustive_permitted},
                         {"complete", census.complete},
                         {"total_found", census.total_found},
                         {"canonical", census.canonical_count},
                         {"noncanonical", census.noncanonical_count},
                         {"kept", kept},
                         {"nodes", census.nodes}};
  R.payload["kept_checks"] = {{"module_check", module_ok},
                              {"inner_distribution", inner_ok},
                              {"coefficient_pattern", affine ? json(pattern_ok) : json(nullptr)},
                              {"subgroups", subgroups},
                              {"cosets_of_subgroups", cosets}};
  bool ekr = over.complete && over.total_found == 0;
  R.verdicts["ekr"] = ekr;
  R.verdicts["module_property"] = module_ok == kept;
  R.verdicts["inner_distribution"] = inner_ok == kept;
  if (exhaustive && census.complete)
    R.verdicts["strict_ekr"] = census.noncanonical_count == 0;
  else
    R.verdicts["strict_ekr"] = nullptr;

  if (!ekr && over.complete)
    R.exit_code = verified_false;
  if (module_ok != kept || inner_ok != kept || (affine && pattern_ok != kept))
    R.exit_code = verified_false;
  if (R.exit_code == verified_true && (!over.complete || (exhaustive && !census.complete)))
    R.exit_code = usage_error;
  return R;
}

inline Report cmd_module_check(GroupTable const &G, Options const &o)
{
  if (o.coclique.empty())
    throw usage_failure("module-check needs --coclique <file>");
  auto S = load_coclique(G, o.coclique);
  if (S.size() * G.degree() != G.order())
    throw usage_failure("coclique must have |G|/n elements");
  if (!is_coclique(G, S))
    throw usage_failure("the given set is not a coclique");
  Report R;
  auto m = module_check(G, S);
  auto cl = classify(G, S);
  R.payload["size"] = S.size();
  R.payload["precheck"] = m.precheck;
  R.payload["witness"] = m.witness ? json(cycles(G, *m.witness)) : json(nullptr);
  R.payload["canonical_match"] = cl.match ? json({cl.match->first, cl.match->second}) : json(nullptr);
  R.payload["is_subgroup"] = cl.is_subgroup;
  R.payload["is_coset_of_subgroup"] = cl.is_coset_of_subgroup;
  R.verdicts["module_check"] = m.holds;
  R.verdicts["canonical"] = cl.canonical;
  if (!m.holds)
    R.exit_code = verified_false;
  return R;
}

inline Report cmd_inner_dist(GroupTable const &G, Options const &o)
{
  Report R;
  auto C = conjugacy_classes(G);
  auto H = point_stabilizer(G, 0);
  ElementSet S = o.coclique.empty() ? H : load_coclique(G, o.coclique);
  if (S.empty())
    throw usage_failure("coclique is empty");
  auto a = inner_distribution(G, C, S);
  auto b = inner_distribution(G, C, H);
  json rows = json::array();
  for (std::size_t c = 0; c < C.count(); ++c)
    rows.push_back({{"representative", cycles(G, C.representatives[c])},
                    {"size", C.sizes[c]},
                    {"value", exact(a[c])},
                    {"stabilizer", exact(b[c])}});
  R.payload["size"] = S.size();
  R.payload["source"] = o.coclique.empty() ? "stabilizer" : "file";
  R.payload["classes"] = rows;
  bool maximum = S.size() * G.degree() == G.order() && is_coclique(G, S);
  R.payload["maximum_coclique"] = maximum;
  if (maximum && is_2transitive(G)) {
    R.verdicts["matches_stabilizer"] = a == b;
    if (a != b)
      R.exit_code = verified_false;
  } else {
    R.verdicts["matches_stabilizer"] = nullptr;
  }
  return R;
}

inline Report cmd_complements(GroupTable const &G, Options const &o)
{
  auto C = conjugacy_classes(G);
  auto normals = regular_normal_subgroups(G, C);
  if (!normals || normals->empty())
    throw usage_failure("complements needs a group with a regular normal subgroup");
  auto const &N = normals->front();
  auto search = find_complements(G, N, o.budget);
  Report R;
  json classes = json::array();
  bool nonstandard_coclique = false, modules_ok = true;
  for (auto const &cls : search.classes) {
    auto const &rep = cls.representative;
    json row = {{"order", rep.subgroup.size()},
                {"standard", rep.is_standard},
                {"coclique", rep.is_coclique},
                {"members", cls.members},
                {"generators", cycle_list(G, small_generating_set(G, rep.subgroup))},
                {"derangement_witness",
                 rep.derangement_witness ? json(cycles(G, *rep.derangement_witness)) : json(nullptr)}};
    if (rep.is_coclique) {
      bool holds = module_check(G, rep.subgroup).holds;
      modules_ok = modules_ok && holds;
      row["module_check"] = holds;
      row["canonical"] = canonical_match(G, rep.subgroup).has_value();
      nonstandard_coclique = nonstandard_coclique || !rep.is_standard;
    }
    classes.push_back(row);
  }
  R.payload["stabilizer_generators"] = cycle_list(G, search.stabilizer_generators);
  R.payload["complements_found"] = search.complements_found;
  R.payload["complete"] = search.complete;
  R.payload["classes"] = classes;
  R.verdicts["nonstandard_coclique_complement"] = nonstandard_coclique;
  R.verdicts["module_check"] = modules_ok;
  if (!modules_ok)
    R.exit_code = verified_false;
  else if (!search.complete)
    R.exit_code = usage_error;
  return R;
}

inline Report cmd_corpus(Options const &o)
{
  CorpusOptions co;
  co.workers = o.workers;
  co.budget = o.budget;
  co.seed = o.seed;
  CorpusRunner runner(co);
  Report R;
  json rows = json::array();
  bool all = true;
  for (auto const &r : runner.run_all()) {
    json row = {{"id", r.id}, {"title", r.title}, {"pass", r.pass}, {"detail", r.detail}};
    if (o.timings)
      row["seconds"] = inexact(r.seconds);
    rows.push_back(row);
    all = all && r.pass;
  }
  R.payload["criteria"] = rows;
  R.verdicts["all_pass"] = all;
  if (!all)
    R.exit_code = verified_false;
  return R;
}

inline void render_text(json const &j, std::string const &prefix, std::ostringstream &os)
{
  if (j.is_object() && j.contains("kind") && j.contains("value") && j.size() == 2) {
    os << prefix << ": " << (j["value"].is_string() ? j["value"].get<std::string>() : j["value"].dump()) << '\n';
    return;
  }
  if (j.is_object()) {
    for (auto const &[k, v] : j.items())
      render_text(v, prefix.empty() ? k : prefix + "." + k, os);
    return;
  }
  if (j.is_array() && std::any_of(j.begin(), j.end(), [](json const &x) { return x.is_object(); })) {
    for (std::size_t i = 0; i < j.size(); ++i)
      render_text(j[i], prefix + "[" + std::to_string(i) + "]", os);
    return;
  }
  os << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

inline Result run(std::vector<std::string> const &args)
{
  Options o;
  CLI::App app{"Derangement graphs of 2-transitive groups", "ekr-lab"};
  app.require_subcommand(1);
  app.add_option("--group", o.group, "family:params or @spec.json");
  app.add_option("--out", o.out, "json or text")->check(CLI::IsMember({"json", "text"}));
  app.add_option("--limit", o.limit, "cocliques kept by a census")->check(CLI::PositiveNumber);
  app.add_flag("--exhaustive", o.exhaustive, "exhaustive census where the size gate allows it");
  app.add_option("--workers", o.workers, "census worker threads")->check(CLI::Range(1u, 256u));
  app.add_option("--budget", o.budget, "search node budget")->check(CLI::PositiveNumber);
  app.add_option("--seed", o.seed, "candidate shuffling seed (sampling only)");
  app.add_option("--coclique", o.coclique, "JSON list of image arrays");
  app.add_flag("--timings", o.timings, "include wall-clock timings");
  std::pair<char const *, char const *> const commands[] = {
      {"info", "order, classes, transitivity, regular normal subgroups"},
      {"spectrum", "class-sum spectrum and least-eigenvalue verdict"},
      {"derangements", "derangement classes and counts"},
      {"connectivity", "components of the derangement graph"},
      {"ekr-check", "maximum coclique census with module and distribution checks"},
      {"module-check", "exact module test for --coclique"},
      {"inner-dist", "inner distribution of --coclique (default: a point stabilizer)"},
      {"complements", "complements to a regular normal subgroup"},
      {"corpus", "all acceptance criteria over the built-in corpus"},
  };
  for (auto [name, what] : commands)
    app.add_subcommand(name, what)->fallthrough();

  Result res;
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (CLI::CallForHelp const &) {
    res.out = app.help();
    return res;
  } catch (CLI::ParseError const &e) {
    res.exit_code = usage_error;
    res.err = e.what();
    res.err += '\n';
    return res;
  }
  std::string command = app.get_subcommands().front()->get_name();

  auto start = std::chrono::steady_clock::now();
  json report;
  try {
    Report body;
    if (command == "corpus") {
      body = cmd_corpus(o);
      report["group"] = nullptr;
    } else {
      auto L = load_group(o.group);
      auto const &G = L.G;
      report["group"] = L.descriptor;
      if (command == "info")
        body = cmd_info(G);
      else if (command == "spectrum")
        body = cmd_spectrum(G);
      else if (command == "derangements")
        body = cmd_derangements(G, o.group);
      else if (command == "connectivity")
        body = cmd_connectivity(G);
      else if (command == "ekr-check")
        body = cmd_ekr_check(G, o);
      else if (command == "module-check")
        body = cmd_module_check(G, o);
      else if (command == "inner-dist")
        body = cmd_inner_dist(G, o);
      else
        body = cmd_complements(G, o);
    }
    report["schema_version"] = schema_version;
    report["command"] = command;
    report["payload"] = body.payload;
    report["verdicts"] = body.verdicts;
    if (o.timings)
      report["timings"] = {
          {"seconds", inexact(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count())}};
    res.exit_code = body.exit_code;
  } catch (ekr_error const &e) {
    res.exit_code = usage_error;
    res.err = std::string("error: ") + e.what() + '\n';
    return res;
  }

  if (o.out == "json") {
    res.out = report.dump(2) + '\n';
  } else {
    std::ostringstream os;
    render_text(report, "", os);
    res.out = os.str();
  }
  return res;
}

} // namespace ekr::cli
