#include "qfm/cli.hpp"

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "qfm/decomposer.hpp"
#include "qfm/errors.hpp"
#include "qfm/global_witt.hpp"
#include "qfm/motive.hpp"
#include "qfm/oracle.hpp"

namespace qfm::cli {

using nlohmann::json;

json to_json(const MotiveSummand& s) {
  if (const auto* t = std::get_if<Tate>(&s)) return {{"kind", "tate"}, {"twist", t->twist}};
  if (const auto* r = std::get_if<RostTwist>(&s)) {
    json j{{"kind", "rost"}, {"fold", r->fold}, {"twist", r->twist}};
    if (r->pfister_tag) j["pfister"] = {to_string(r->pfister_tag->first), to_string(r->pfister_tag->second)};
    return j;
  }
  if (const auto* d = std::get_if<DiscMotive>(&s))
    return {{"kind", "disc"}, {"twist", d->twist}, {"disc", d->disc.rep().get_str()}};
  const auto& u = std::get<UpperMotive>(s);
  return {{"kind", "upper"}, {"rank", u.rank}, {"geometric", u.geometric}, {"decomposable", u.decomposable}};
}

json to_json(const Decomposition& d) {
  json summands = json::array();
  for (const auto& s : d.summands) summands.push_back(to_json(s));
  return {{"dim", d.dim}, {"summands", summands}};
}

namespace {

MotiveSummand summand_from_json(const json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "tate") return Tate{j.at("twist").get<int>()};
  if (kind == "rost") {
    RostTwist r{j.at("fold").get<int>(), j.at("twist").get<int>(), std::nullopt};
    if (j.contains("pfister")) {
      const auto& tag = j.at("pfister");
      r.pfister_tag = std::pair{parse_rational(tag.at(0).get<std::string>()), parse_rational(tag.at(1).get<std::string>())};
    }
    return r;
  }
  if (kind == "disc") return DiscMotive{j.at("twist").get<int>(), SquareClass::of(Integer(j.at("disc").get<std::string>()))};
  if (kind == "upper")
    return UpperMotive{j.at("rank").get<int>(), j.at("geometric").get<std::vector<int>>(), j.at("decomposable").get<bool>()};
  throw DomainError("unknown summand kind '" + kind + "'");
}

}  // namespace

Decomposition decomposition_from_json(const json& j) {
  Decomposition d{j.at("dim").get<int>(), {}};
  for (const auto& s : j.at("summands")) d.summands.push_back(summand_from_json(s));
  return d;
}

namespace {

json rationals(const QuadraticForm& q) {
  json out = json::array();
  for (const Rational& c : q.diagonal()) out.push_back(to_string(c));
  return out;
}

struct FormInput {
  std::string csv;
  std::string gram_file;

  void attach(CLI::App* app) {
    auto* form = app->add_option("--form", csv, "diagonal entries, comma separated (n or n/d)");
    auto* gram = app->add_option("--gram", gram_file, "JSON file {\"gram\": [[...]]}");
    form->excludes(gram);
    app->parse_complete_callback([form, gram] {
      if (form->count() + gram->count() == 0) throw CLI::RequiredError("--form or --gram");
    });
  }

  QuadraticForm read() const {
    if (!csv.empty()) return parse_form(csv);
    std::ifstream in(gram_file);
    if (!in) throw DomainError("cannot read " + gram_file);
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_gram_json(buffer.str());
  }
};

json profile_json(const LocalProfile& p) {
  json j{{"place", p.place.name()}, {"dim", p.dim},       {"det", p.det.rep().get_str()}, {"disc", p.disc().rep().get_str()},
         {"hasse", p.hasse},        {"witt_index", p.witt_index}, {"anisotropic_dim", p.an_dim}};
  if (p.signature) j["signature"] = {{"positives", p.signature->positives}, {"negatives", p.signature->negatives}};
  return j;
}

PlaceClass resolve_place(const QuadraticForm& q, const std::string& text) {
  if (text == "generic") {
    for (const PlaceClass& v : relevant_place_classes(q))
      if (v.is_generic()) return v;
    throw DomainError("no generic non-square class: dim is odd or disc is trivial");
  }
  return PlaceClass::of(parse_place(text));
}

json witness_json(const QuadraticForm& q, const WitnessForm& w) {
  json plan = json::array();
  for (const auto& e : w.plan)
    plan.push_back({{"place", e.place.name()},
                    {"indecomposable", e.indecomposable},
                    {"k", e.k},
                    {"partial", e.partial},
                    {"remainder", e.remainder}});
  const WitnessReport r = check_witness(q, w);
  json j{{"fold", w.fold},
         {"twist", w.twist},
         {"pfister", rationals(w.pfister)},
         {"factor", rationals(w.factor)},
         {"product", rationals(w.product)},
         {"s", w.s},
         {"plan", plan},
         {"report",
          {{"splitting_locus", r.splitting_locus},
           {"product_dimension", r.product_dimension},
           {"difference_dimension", r.difference_dimension},
           {"inequalities", r.inequalities},
           {"all", r.all()}}}};
  j["pfister_pair"] = w.pfister_pair ? json{{"a", w.pfister_pair->a.get_str()}, {"b", w.pfister_pair->b.get_str()}} : json();
  return j;
}

// Differential checks of one form against the oracle kit.
void verify_form(const QuadraticForm& q, json& mismatches, std::size_t& checks, std::size_t& skipped) {
  const std::string name = q.to_string();
  auto mismatch = [&](const std::string& what, const std::string& place) {
    mismatches.push_back({{"form", name}, {"check", what}, {"place", place}});
  };
  for (const PlaceClass& v : relevant_place_classes(q)) {
    const LocalProfile profile = local_profile(q, v);
    if (v.is_real()) {
      const Signature sig = signature(q);
      ++checks;
      if ((profile.witt_index > 0) != (sig.positives > 0 && sig.negatives > 0)) mismatch("isotropy", "inf");
      continue;
    }
    try {
      ++checks;
      if (oracle::padic_isotropy_oracle(q, v.place().p()) != (profile.witt_index > 0)) mismatch("isotropy", v.name());
    } catch (const OracleBudgetExceeded&) {
      --checks;
      ++skipped;
    }
  }
  const auto& c = q.diagonal();
  for (std::size_t i = 0; i < c.size(); ++i)
    for (std::size_t j = i + 1; j < c.size(); ++j) {
      std::vector<Place> places{Place::real()};
      for (const Place& v : hilbert_bad_places(c[i], c[j]))
        if (!v.is_real()) places.push_back(v);
      for (const Place& v : places) {
        try {
          ++checks;
          if (oracle::conic_oracle(c[i], c[j], v) != hilbert(c[i], c[j], v)) mismatch("hilbert", v.name());
        } catch (const OracleBudgetExceeded&) {
          --checks;
          ++skipped;
        }
      }
    }
  if (q.dim() <= 4) {
    ++checks;
    if (oracle::rational_zero_search(q, 12) && !is_isotropic(q)) mismatch("rational_zero", "global");
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quadratic forms over Q: invariants, Witt indices and motivic decompositions"};
  app.name("qfm");
  app.require_subcommand(1);
  std::function<int()> action;

  FormInput inv_form;
  auto* inv = app.add_subcommand("invariants", "global invariants");
  inv_form.attach(inv);
  inv->final_callback([&] {
    action = [&] {
      const QuadraticForm q = inv_form.read();
      const GlobalInvariants g = global_invariants(q);
      json hasse = json::object();
      for (const auto& [v, h] : g.hasse) hasse[v.name()] = h;
      out << json{{"dim", g.dim},
                  {"det", g.det.rep().get_str()},
                  {"disc", g.disc.rep().get_str()},
                  {"signature", {{"positives", g.signature.positives}, {"negatives", g.signature.negatives}}},
                  {"hasse", hasse},
                  {"witt_index", global_witt_index(q)},
                  {"anisotropic_dim", global_anisotropic_dimension(q)}}
                 .dump(2)
          << '\n';
      return 0;
    };
  });

  FormInput loc_form;
  std::string loc_place;
  auto* loc = app.add_subcommand("local", "local profile and decomposition at one place");
  loc_form.attach(loc);
  loc->add_option("--place", loc_place, "inf, a prime, or generic")->required();
  loc->final_callback([&] {
    action = [&] {
      const QuadraticForm q = loc_form.read();
      const LocalProfile p = local_profile(q, resolve_place(q, loc_place));
      out << json{{"profile", profile_json(p)}, {"decomposition", to_json(local_decomposition(p))}}.dump(2) << '\n';
      return 0;
    };
  });

  FormInput dec_form;
  bool dec_json = false, dec_diagram = false, dec_both = false;
  auto* dec = app.add_subcommand("decompose", "global motivic decomposition");
  dec_form.attach(dec);
  auto* o_json = dec->add_flag("--json", dec_json, "JSON output (default)");
  auto* o_diag = dec->add_flag("--diagram", dec_diagram, "ASCII diagram");
  auto* o_both = dec->add_flag("--both", dec_both, "JSON, then the diagram");
  o_json->excludes(o_diag)->excludes(o_both);
  o_diag->excludes(o_both);
  dec->final_callback([&] {
    action = [&] {
      const Decomposition d = decompose(dec_form.read());
      if (!dec_diagram) out << to_json(d).dump(2) << '\n';
      if (dec_diagram || dec_both) out << vishik_diagram(d);
      return 0;
    };
  });

  FormInput bin_form;
  int bin_a = 0, bin_b = 0;
  auto* bin = app.add_subcommand("binary", "binary summand with geometric twists (a, b)");
  bin_form.attach(bin);
  bin->add_option("--a", bin_a)->required();
  bin->add_option("--b", bin_b)->required();
  bin->final_callback([&] {
    action = [&] {
      const QuadraticForm q = bin_form.read();
      json j{{"exists", binary_summand_exists(q, bin_a, bin_b)}};
      if (j["exists"]) {
        json c = json::array();
        for (const auto& s : classify_binary(q, bin_a, bin_b)) c.push_back(to_json(s));
        j["classification"] = c;
      }
      out << j.dump(2) << '\n';
      return 0;
    };
  });

  FormInput wit_form;
  std::optional<int> wit_a, wit_b;
  std::size_t wit_bound = WitnessOptions{}.search_bound;
  auto* wit = app.add_subcommand("witness", "Pfister witness, or a witness form for the pair (a, b)");
  wit_form.attach(wit);
  auto* o_a = wit->add_option("--a", wit_a);
  auto* o_b = wit->add_option("--b", wit_b);
  o_a->needs(o_b);
  o_b->needs(o_a);
  wit->add_option("--search-bound", wit_bound, "square-free candidates per Pfister slot");
  wit->final_callback([&] {
    action = [&] {
      const QuadraticForm q = wit_form.read();
      const WitnessOptions options{wit_bound};
      if (wit_a) {
        out << witness_json(q, construct_witness_form(q, *wit_a, *wit_b, options)).dump(2) << '\n';
      } else {
        const PfisterPair p = construct_pfister_witness(q, options);
        out << json{{"a", p.a.get_str()}, {"b", p.b.get_str()}, {"pfister", rationals(p.form())}}.dump(2) << '\n';
      }
      return 0;
    };
  });

  std::string hil_a, hil_b, hil_place;
  auto* hil = app.add_subcommand("hilbert", "Hilbert symbol (a,b)_v");
  hil->add_option("--a", hil_a)->required();
  hil->add_option("--b", hil_b)->required();
  hil->add_option("--place", hil_place)->required();
  hil->final_callback([&] {
    action = [&] {
      out << hilbert(parse_rational(hil_a), parse_rational(hil_b), parse_place(hil_place)) << '\n';
      return 0;
    };
  });

  std::string ver_corpus;
  std::size_t ver_random = 0;
  std::uint64_t ver_seed = 1;
  auto* ver = app.add_subcommand("verify", "differential check against the brute-force oracles");
  auto* o_corpus = ver->add_option("--corpus", ver_corpus, "file with one CSV form per line");
  auto* o_random = ver->add_option("--random", ver_random, "number of random forms (dim 2..6, |coeff| <= 30)");
  ver->add_option("--seed", ver_seed);
  o_corpus->excludes(o_random);
  ver->parse_complete_callback([o_corpus, o_random] {
    if (o_corpus->count() + o_random->count() == 0) throw CLI::RequiredError("--corpus or --random");
  });
  ver->final_callback([&] {
    action = [&] {
      std::vector<QuadraticForm> forms;
      if (!ver_corpus.empty()) {
        std::ifstream in(ver_corpus);
        if (!in) throw DomainError("cannot read " + ver_corpus);
        for (std::string line; std::getline(in, line);) {
          if (line.empty() || line.front() == '#') continue;
          forms.push_back(parse_form(line));
        }
      } else {
        std::mt19937_64 rng(ver_seed);
        for (std::size_t i = 0; i < ver_random; ++i) forms.push_back(oracle::random_form(rng, 2, 6, 30));
      }
      json mismatches = json::array();
      std::size_t checks = 0, skipped = 0;
      for (const auto& q : forms) verify_form(q, mismatches, checks, skipped);
      out << json{{"forms", forms.size()}, {"checks", checks}, {"skipped", skipped}, {"mismatches", mismatches}}.dump(2)
          << '\n';
      return mismatches.empty() ? 0 : static_cast<int>(kInternal);
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsage;
  }

  try {
    return action();
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  } catch (const BudgetExceeded& e) {
    err << "budget exceeded: " << e.what() << '\n';
    return kBudget;
  } catch (const InternalError& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternal;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kDomain;
  }
}

}  // namespace qfm::cli
