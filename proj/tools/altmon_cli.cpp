// altmon: a verification workbench for the alternating partial permutation
// monoids and their order-preserving and monotone submonoids.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "altmon/claims.hpp"
#include "altmon/congruences.hpp"
#include "altmon/genrank.hpp"
#include "altmon/green.hpp"

using namespace altmon;
using ordered_json = nlohmann::ordered_json;

namespace {

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open output file " + path);
  out << text;
}

std::string family_prefix(const MonoidSpec& spec) {
  return spec.tag == MonoidTag::AMn ? "Q" : "J";
}

std::string ideal_prefix(const MonoidSpec& spec) {
  return spec.tag == MonoidTag::AMn ? "F" : "I";
}

LatticeOptions cong_options(const MonoidSpec& spec, size_t cap) {
  LatticeOptions opts;
  opts.size_cap = cap;
  try {
    if (spec.tag == MonoidTag::AOn) {
      opts.generators = make_family(FamilyName::x, spec.n).members;
    } else if (spec.tag == MonoidTag::AMn && spec.n >= 3) {
      static const FamilyName by_mod[4] = {FamilyName::am0, FamilyName::am1, FamilyName::am2,
                                           FamilyName::am3};
      opts.generators = make_family(by_mod[spec.n % 4], spec.n).members;
    }
  } catch (const Error&) {
    opts.generators.clear();  // fall back to the computed default
  }
  return opts;
}

ordered_json profile_json(const JClassProfile& prof) {
  ordered_json doc;
  doc["schema"] = 1;
  doc["monoid"] = prof.monoid;
  doc["n"] = prof.n;
  auto rows = [](const std::vector<JClassProfileRow>& rs) {
    ordered_json arr = ordered_json::array();
    for (const auto& r : rs)
      arr.push_back({{"label", r.label},
                     {"size", r.size},
                     {"l_classes", r.l_classes},
                     {"r_classes", r.r_classes},
                     {"max_h", r.max_h}});
    return arr;
  };
  doc["computed"] = rows(prof.computed);
  if (!prof.predicted.empty()) {
    doc["predicted"] = rows(prof.predicted);
    doc["matches_prediction"] = prof.matches_prediction();
  }
  return doc;
}

ordered_json lattice_json(const ElementSet& elems, const CongruenceLattice& lat) {
  ordered_json doc;
  doc["schema"] = 1;
  doc["congruences"] = ordered_json::array();
  for (size_t i = 0; i < lat.congruences.size(); ++i) {
    ordered_json c;
    c["name"] = lat.names[i];
    c["block_count"] = lat.congruences[i].block_count();
    ordered_json blocks = ordered_json::array();
    int singletons = 0;
    for (const auto& block : lat.congruences[i].blocks()) {
      if (block.size() == 1) {
        ++singletons;
        continue;
      }
      ordered_json b = ordered_json::array();
      for (int e : block) b.push_back(to_string(elems[e]));
      blocks.push_back(b);
    }
    c["blocks"] = blocks;
    c["singletons"] = singletons;
    doc["congruences"].push_back(c);
  }
  doc["hasse"] = ordered_json::array();
  for (auto [hi, lo] : lat.hasse) doc["hasse"].push_back({hi, lo});
  return doc;
}

std::string lattice_dot(const CongruenceLattice& lat) {
  std::ostringstream out;
  out << "digraph conlat {\n  rankdir=BT;\n";
  for (size_t i = 0; i < lat.congruences.size(); ++i) {
    std::string label = lat.names[i].empty()
                            ? "c" + std::to_string(i) + " (" +
                                  std::to_string(lat.congruences[i].block_count()) + " blocks)"
                            : lat.names[i];
    out << "  n" << i << " [label=\"" << label << "\"];\n";
  }
  for (auto [hi, lo] : lat.hasse) out << "  n" << lo << " -> n" << hi << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"workbench for alternating / order-preserving / monotone partial permutation "
               "monoids"};
  app.require_subcommand(1);

  std::string spec_text, output, format = "text";
  size_t cong_cap = 2000;

  auto add_common = [&](CLI::App* cmd, bool with_format = true) {
    cmd->add_option("spec", spec_text, "monoid, e.g. AO:5, AM:4, AI:3, InG:4:[(1 2),(1 2 3 4)]")
        ->required();
    cmd->add_option("-o,--output", output, "write to a file instead of stdout");
    if (with_format) cmd->add_option("--format", format, "text | json | dot");
  };

  auto* enum_cmd = app.add_subcommand("enum", "enumerate the elements");
  add_common(enum_cmd);
  bool enum_count_only = false;
  enum_cmd->add_flag("--count", enum_count_only, "print only the cardinality");

  auto* card_cmd = app.add_subcommand("card", "closed-form cardinality, checked by enumeration");
  add_common(card_cmd, false);
  bool card_no_check = false;
  card_cmd->add_flag("--no-check", card_no_check, "skip the enumeration cross-check");

  auto* green_cmd = app.add_subcommand("green", "Green's relations and the J-class poset");
  add_common(green_cmd);

  auto* cong_cmd = app.add_subcommand("cong", "congruence lattice");
  add_common(cong_cmd);
  cong_cmd->add_option("--cap", cong_cap, "largest monoid size attempted");
  bool cong_classify = false;
  cong_cmd->add_flag("--classify", cong_classify, "diff the lattice against the classification");

  auto* rank_cmd = app.add_subcommand("rank", "rank bounds and exhaustive rank search");
  add_common(rank_cmd, false);
  bool rank_exhaustive = false, rank_full_pool = false;
  int rank_max_size = 4;
  uint64_t rank_budget = 2'000'000;
  rank_cmd->add_flag("--exhaustive", rank_exhaustive, "search generating subsets exhaustively");
  rank_cmd->add_flag("--full-pool", rank_full_pool, "search over all elements, not rank >= n-1");
  rank_cmd->add_option("--max-size", rank_max_size, "largest subset size tried");
  rank_cmd->add_option("--budget", rank_budget, "subset count budget for the search");

  auto* dot_cmd = app.add_subcommand("dot", "DOT graph of the J-poset or congruence lattice");
  add_common(dot_cmd, false);
  std::string dot_what = "jposet";
  dot_cmd->add_option("--what", dot_what, "jposet | conlat");

  auto* check_cmd = app.add_subcommand("check-all", "run the whole verification suite");
  ClaimOptions claim_opts;
  bool strict = false;
  check_cmd->add_option("-o,--output", output, "write the JSON report to a file");
  check_cmd->add_option("--n-max", claim_opts.n_max,
                        "skip claims above this chain size (0 = no limit)");
  check_cmd->add_option("--jobs", claim_opts.jobs, "worker threads (0 = hardware)");
  check_cmd->add_flag("--long", claim_opts.long_runs, "include the long-running claims");
  check_cmd->add_flag("--timings", claim_opts.timings,
                      "include per-claim milliseconds (report no longer byte-reproducible)");
  check_cmd->add_flag("--strict", strict, "treat skipped claims as failures");
  bool quiet = false;
  check_cmd->add_flag("--quiet", quiet, "suppress the per-claim text summary");

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(check_cmd)) {
      auto claims = build_claims(claim_opts);
      auto results = run_claims(claims, claim_opts);
      if (!quiet) std::cout << report_text(results);
      if (!output.empty()) emit(report_json(results, claim_opts), output);
      bool any_fail = false, any_skip = false;
      for (const auto& r : results) {
        any_fail |= r.status == "fail";
        any_skip |= r.status != "pass" && r.status != "fail";
      }
      return any_fail || (strict && any_skip) ? 1 : 0;
    }

    MonoidSpec spec = parse_monoid_spec(spec_text);

    if (app.got_subcommand(enum_cmd)) {
      auto elems = enumerate(spec);
      if (format == "json") {
        ordered_json doc;
        doc["schema"] = 1;
        doc["monoid"] = to_string(spec);
        doc["size"] = elems.size();
        if (!enum_count_only) {
          doc["elements"] = ordered_json::array();
          for (const auto& e : elems.elements()) doc["elements"].push_back(to_string(e));
        }
        emit(doc.dump(2) + "\n", output);
      } else {
        std::ostringstream out;
        out << to_string(spec) << ": " << elems.size() << " elements\n";
        if (!enum_count_only)
          for (const auto& e : elems.elements()) out << "  " << to_string(e) << "\n";
        emit(out.str(), output);
      }
      return 0;
    }

    if (app.got_subcommand(card_cmd)) {
      std::ostringstream out;
      int64_t formula = cardinality_formula(spec);
      out << to_string(spec) << ": " << formula << "\n";
      bool ok = true;
      if (!card_no_check) {
        size_t count = enumerate(spec).size();
        ok = count == static_cast<size_t>(formula);
        out << "formula==enumeration: " << (ok ? "pass" : "FAIL") << " (enumerated "
            << count << ")\n";
      }
      emit(out.str(), output);
      return ok ? 0 : 1;
    }

    if (app.got_subcommand(green_cmd)) {
      if (format == "dot") {
        auto poset = j_poset(green_structure(enumerate(spec)), family_prefix(spec));
        emit(export_dot(poset), output);
        return 0;
      }
      auto prof = jclass_profile(spec);
      if (format == "json") {
        emit(profile_json(prof).dump(2) + "\n", output);
      } else {
        std::ostringstream out;
        out << prof.monoid << " J-classes (label: size, L-classes, R-classes, max H):\n";
        for (const auto& r : prof.computed)
          out << "  " << r.label << ": " << r.size << ", " << r.l_classes << ", " << r.r_classes
              << ", " << r.max_h << "\n";
        if (!prof.predicted.empty())
          out << "matches the counting forms: " << (prof.matches_prediction() ? "yes" : "NO")
              << "\n";
        emit(out.str(), output);
      }
      return 0;
    }

    if (app.got_subcommand(cong_cmd)) {
      auto elems = enumerate(spec);
      auto opts = cong_options(spec, cong_cap);
      auto lat = congruence_lattice(elems, opts);
      bool named_families =
          spec.tag == MonoidTag::AOn || spec.tag == MonoidTag::AMn;
      if (named_families) {
        auto gs = green_structure(elems);
        name_lattice(lat, named_congruences(gs, family_prefix(spec), ideal_prefix(spec)));
      }
      std::ostringstream out;
      if (cong_classify) {
        auto rep = verify_classification(spec, opts);
        out << rep.monoid << ": " << rep.computed_count << " congruences (classification expects "
            << rep.expected_count << ")\n";
        for (const auto& note : rep.notes) out << "  " << note << "\n";
        out << (rep.pass ? "classification verified\n" : "classification DIFFERS\n");
        emit(out.str(), output);
        return rep.pass ? 0 : 1;
      }
      if (format == "dot") {
        emit(lattice_dot(lat), output);
      } else if (format == "json") {
        emit(lattice_json(elems, lat).dump(2) + "\n", output);
      } else {
        out << to_string(spec) << ": " << lat.congruences.size() << " congruences\n";
        for (size_t i = 0; i < lat.congruences.size(); ++i)
          out << "  " << (lat.names[i].empty() ? "(unnamed)" : lat.names[i]) << " — "
              << lat.congruences[i].block_count() << " blocks\n";
        emit(out.str(), output);
      }
      return 0;
    }

    if (app.got_subcommand(rank_cmd)) {
      std::ostringstream out;
      auto rep = rank_lower_bound_report(spec);
      out << rep.monoid << " lower bound: rank >= " << rep.implied_bound
          << (rep.pass ? "" : " (STRUCTURAL CHECK FAILED)") << "\n";
      for (const auto& c : rep.claims) {
        out << "  " << c.what << ": " << (c.holds ? "loses the monoid" : "still generates");
        if (!c.missing.empty()) out << " (missing " << c.missing << ")";
        out << "\n";
      }
      if (rank_exhaustive) {
        ExhaustiveRankOptions opts;
        opts.max_size = rank_max_size;
        opts.full_pool = rank_full_pool;
        opts.subset_budget = rank_budget;
        auto res = exhaustive_rank(spec, opts);
        if (res.exact) {
          out << "rank = " << res.rank << " (exhaustive, " << res.subsets_tried
              << " subsets tried)\n";
          out << "a minimum generating set:\n";
          for (const auto& w : res.witness) out << "  " << w << "\n";
        } else {
          out << "rank > " << rank_max_size << " (" << res.subsets_tried << " subsets tried)\n";
        }
      }
      emit(out.str(), output);
      return 0;
    }

    if (app.got_subcommand(dot_cmd)) {
      if (dot_what == "conlat") {
        auto elems = enumerate(spec);
        auto lat = congruence_lattice(elems, cong_options(spec, cong_cap));
        bool named_families =
            spec.tag == MonoidTag::AOn || spec.tag == MonoidTag::AMn;
        if (named_families) {
          auto gs = green_structure(elems);
          name_lattice(lat, named_congruences(gs, family_prefix(spec), ideal_prefix(spec)));
        }
        emit(lattice_dot(lat), output);
      } else {
        auto poset = j_poset(green_structure(enumerate(spec)), family_prefix(spec));
        emit(export_dot(poset), output);
      }
      return 0;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
