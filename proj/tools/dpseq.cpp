// dpseq: command-line front end.
//
// Exit codes: 0 found / verified, 1 verified not found or documented
// nonexistence, 2 usage error, 3 inconclusive (search cap or unresolved).

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dpseq/error.hpp"
#include "dpseq/graceful.hpp"
#include "dpseq/group.hpp"
#include "dpseq/isbell.hpp"
#include "dpseq/json_io.hpp"
#include "dpseq/polymethod.hpp"
#include "dpseq/search.hpp"
#include "dpseq/sequencing.hpp"

namespace {

using namespace dpseq;

enum Exit { kOk = 0, kNotFound = 1, kUsage = 2, kInconclusive = 3 };

struct Output {
  std::string format = "json";
  std::string out_file;
  std::ostringstream buf;

  bool json() const { return format == "json"; }
  void emit(const Json& j, bool one_line = false) { buf << (one_line ? j.dump() : j.dump(2)) << "\n"; }
  void flush() {
    if (out_file.empty()) {
      std::cout << buf.str() << std::flush;
      return;
    }
    std::ofstream f(out_file, std::ios::binary);
    if (!f) throw InvalidParameter("cannot open --out file '" + out_file + "'");
    f << buf.str();
  }
};

std::vector<std::string> split_labels(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '\t' || c == '\n') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

std::vector<int> parse_ints(const std::string& text) {
  std::vector<int> out;
  for (const auto& t : split_labels(text)) {
    std::size_t pos = 0;
    int v = 0;
    try {
      v = std::stoi(t, &pos);
    } catch (const std::exception&) {
      throw InvalidParameter("expected an integer, got '" + t + "'");
    }
    if (pos != t.size()) throw InvalidParameter("expected an integer, got '" + t + "'");
    out.push_back(v);
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IngestionError("cannot read '" + path + "'");
  std::ostringstream s;
  s << f.rdbuf();
  return s.str();
}

struct GroupFlags {
  std::string name;
  std::string table;

  void add(CLI::App* app) {
    app->add_option("--group", name, "catalog group: D<2m>, Z<n>, Q8, SL23, A4");
    app->add_option("--table", table, "group table file (n, then n rows of n indices)");
  }
  FiniteGroup make() const {
    if (!table.empty()) return ingest_group_table(read_file(table), table);
    if (name.empty()) throw InvalidParameter("one of --group or --table is required");
    return make_group(name);
  }
};

SearchMode parse_mode(const std::string& s) {
  if (s == "s" || s == "s-sequencing") return SearchMode::SSequencing;
  if (s == "rotational") return SearchMode::Rotational;
  if (s == "either") return SearchMode::Either;
  throw InvalidParameter("unknown mode '" + s + "'");
}

Objective parse_objective(const std::string& s) {
  if (s == "exists") return Objective::Exists;
  if (s == "first") return Objective::FirstLexicographic;
  if (s == "count") return Objective::CountAll;
  throw InvalidParameter("unknown objective '" + s + "'");
}

std::string kind_name(SearchMode m) { return m == SearchMode::Rotational ? "rotational" : "s-sequencing"; }

// ---------------------------------------------------------------------------

struct VerifyCmd {
  GroupFlags group;
  std::string sequence, in_file, kind = "s-sequencing";

  int run(Output& out) {
    std::optional<FiniteGroup> g;
    std::vector<std::string> labels;
    std::optional<Certificate> cert;
    if (!in_file.empty()) {
      Json rec;
      try {
        rec = Json::parse(read_file(in_file));
      } catch (const Json::exception& e) {
        throw IngestionError(std::string("bad JSON record: ") + e.what());
      }
      if (!rec.is_object() || !rec.contains("sequence")) throw IngestionError("record has no 'sequence'");
      labels = rec["sequence"].get<std::vector<std::string>>();
      if (rec.contains("kind")) kind = rec["kind"].get<std::string>();
      if (group.name.empty() && group.table.empty() && rec.contains("group"))
        group.name = rec["group"].get<std::string>();
      if (rec.contains("certificate")) cert = certificate_from_json(rec["certificate"]);
    } else {
      if (sequence.empty()) throw InvalidParameter("verify needs --sequence or --in");
      labels = split_labels(sequence);
    }
    g = group.make();
    ElementSequence s{parse_labels(*g, labels)};
    check_element_sequence(*g, s.elements);
    bool valid = false;
    if (kind == "s-sequencing") valid = is_s_sequencing(*g, s);
    else if (kind == "rotational") valid = is_rotational_s_sequencing(*g, s);
    else if (kind == "sequencing") valid = is_sequencing(*g, s);
    else throw InvalidParameter("unknown kind '" + kind + "'");
    Json j = sequence_record(*g, kind, s);
    j["valid"] = valid;
    if (cert) {
      bool replayed = false;
      try {
        replayed = g->is_dihedral() && g->dihedral_m() == cert->m && replay(*cert) == s;
      } catch (const Error&) {
        replayed = false;
      }
      j["certificate_replays"] = replayed;
      valid = valid && replayed;
    }
    if (out.json()) out.emit(j);
    else out.buf << (valid ? "valid " : "invalid ") << kind << " in " << g->name() << "\n";
    return valid ? kOk : kNotFound;
  }
};

struct SearchCmd {
  GroupFlags group;
  std::string set, mode = "s", objective = "exists";
  long long budget = 20'000'000;
  int threads = 0;

  int run(Output& out) {
    const FiniteGroup g = group.make();
    if (set.empty()) throw InvalidParameter("search needs --set");
    auto labels = split_labels(set);
    SearchRequest req;
    req.group = &g;
    req.subset = parse_labels(g, labels);
    req.mode = parse_mode(mode);
    req.objective = parse_objective(objective);
    req.node_budget = budget;
    req.threads = threads;
    const auto res = find_s_sequencing(req);
    Json j;
    j["group"] = g.name();
    j["set"] = labels_of(g, detail::normalized_subset(g, req.subset));
    j["mode"] = to_string(req.mode);
    j["status"] = to_string(res.status);
    j["nodes"] = res.nodes;
    if (req.objective == Objective::CountAll) j["count"] = res.count;
    std::string reason;
    if (res.sequence) {
      j["kind"] = kind_name(res.kind);
      j["sequence"] = labels_of(g, res.sequence->elements);
      j["partial_products"] = labels_of(g, partial_products(g, *res.sequence).entries);
    } else if (res.status == SearchStatus::NotFound) {
      reason = req.mode == SearchMode::Rotational ? "no rotational S-sequencing"
               : req.mode == SearchMode::Either   ? "no S-sequencing or rotational S-sequencing"
                                                  : "no S-sequencing";
      if (req.subset.size() == 4)
        if (auto p = detect_exception_pattern(g, req.subset)) reason += std::string("; exception pattern ") + to_string(p->id);
      j["reason"] = reason;
    } else if (res.status == SearchStatus::Inconclusive) {
      reason = "node budget exhausted";
      j["reason"] = reason;
    }
    if (out.json()) {
      out.emit(j);
    } else {
      out.buf << to_string(res.status);
      if (res.sequence) out.buf << ": " << Json(labels_of(g, res.sequence->elements)).dump();
      if (!reason.empty()) out.buf << ": " << reason;
      if (req.objective == Objective::CountAll) out.buf << " (count " << res.count << ")";
      out.buf << "\n";
    }
    if (res.status == SearchStatus::Found) return kOk;
    return res.status == SearchStatus::NotFound ? kNotFound : kInconclusive;
  }
};

struct ConstructCmd {
  int m = 0;
  std::string exclude, isbell, input;
  int ell = -1;
  bool reflection_start = false;

  int emit_record(Output& out, const FiniteGroup& g, const ElementSequence& s, const Certificate& c) {
    if (!is_s_sequencing(g, s)) throw ConstructionBug("constructed sequence does not verify");
    if (out.json()) out.emit(sequence_record(g, "s-sequencing", s, c));
    else out.buf << Json(labels_of(g, s.elements)).dump() << "\n";
    return kOk;
  }

  int run(Output& out) {
    if (!isbell.empty()) {
      auto v = parse_isbell_variant(isbell);
      if (!v) throw InvalidParameter("unknown Isbell variant '" + isbell + "'");
      if (ell < 1) throw InvalidParameter("--isbell needs --ell >= 1");
      Perm a = input.empty() ? default_isbell_input(*v, ell) : parse_ints(input);
      const ElementSequence s = isbell_construct(*v, ell, a);
      Certificate c;
      c.construction = to_string(*v);
      c.m = isbell_m(*v, ell);
      c.l = ell;
      c.perm = a;
      return emit_record(out, FiniteGroup::dihedral(c.m), s, c);
    }
    if (m <= 0) throw InvalidParameter("construct needs --m or --isbell");
    const FiniteGroup g = FiniteGroup::dihedral(m);
    if (!exclude.empty()) {
      const int x = g.parse(exclude);
      const auto r = s_sequencing_missing(m, x);
      if (r.status == MissingStatus::Resolved) return emit_record(out, g, *r.sequence, *r.certificate);
      Json j{{"group", g.name()}, {"excluded", exclude}, {"status", "unresolved"}, {"reason", r.reason}};
      if (out.json()) out.emit(j);
      else out.buf << "unresolved: " << r.reason << "\n";
      return kInconclusive;
    }
    if (reflection_start) {
      const auto d = sequencing_with_reflection_start(m);
      return emit_record(out, g, d.sequence, d.certificate);
    }
    if (m % 2 == 0 || m < 5) throw InvalidParameter("construct --m without --exclude needs odd m >= 5");
    const auto [v, a] = standard_isbell_input(m);
    const int l = m % 4 == 1 ? (m - 1) / 4 : (m - 3) / 4;
    Certificate c;
    c.construction = to_string(v);
    c.m = m;
    c.l = l;
    c.perm = a;
    return emit_record(out, g, isbell_construct(v, l, a), c);
  }
};

struct CoeffCmd {
  int r = 0, s = 0;
  std::string monomial;
  long long prime = 0;
  int find_bound = -1;

  int run(Output& out) {
    const auto pi = build_pi(r, s);
    Json j{{"r", r}, {"s", s}, {"degree", pi.degree()}};
    MonomialTarget t;
    BigInt c;
    if (!monomial.empty()) {
      t = parse_monomial(monomial, r, s);
      c = coefficient_of(pi, t);
    } else if (find_bound >= 0) {
      auto f = find_admissible_monomial(pi, find_bound);
      if (!f) {
        j["status"] = "not-found";
        if (out.json()) out.emit(j);
        else out.buf << "no admissible monomial with prime factors <= " << find_bound << "\n";
        return kNotFound;
      }
      t = f->first;
      c = f->second;
    } else {
      throw InvalidParameter("coeff needs --monomial or --find");
    }
    const bool admissible = is_admissible(t, r, s) && t.degree() == pi.degree();
    j["monomial"] = to_string(t, r);
    j["coefficient"] = c.str();
    j["factors"] = factor_string(c);
    j["admissible"] = admissible;
    if (prime > 0) j["nonvanishing"] = nonvanishing_applicable(prime, r, s, t);
    if (out.json()) {
      out.emit(j);
    } else {
      out.buf << c.str() << "  factors " << factor_string(c) << "\n";
    }
    return kOk;
  }
};

struct TablesCmd {
  int k = 0;

  int run(Output& out) {
    std::vector<int> ks;
    if (k == 0) ks = {5, 6, 7, 8, 9};
    else ks = {k};
    Json all = Json::array();
    for (int kk : ks) {
      const auto rows = reproduce_table(kk);
      if (!out.json()) {
        out.buf << format_table(kk, rows);
        continue;
      }
      for (const auto& row : rows)
        all.push_back({{"k", kk},
                       {"r", row.r},
                       {"degree", row.degree},
                       {"monomial", to_string(row.monomial, row.r)},
                       {"coefficient", row.coefficient.str()},
                       {"factors", row.factors}});
    }
    if (out.json()) out.emit(all);
    return kOk;
  }
};

struct ScanCmd {
  GroupFlags group;
  int min_size = 1, max_size = -1;
  std::string mode = "either";
  bool small_k = false, strong = false;

  int run(Output& out) {
    const FiniteGroup g = group.make();
    if (small_k) {
      const auto rep = classify_small_k(g);
      Json ex = Json::array();
      for (const auto& [s, p] : rep.exceptions) ex.push_back({{"set", labels_of(g, s)}, {"pattern", to_string(p.id)}});
      Json v = Json::array();
      for (const auto& s : rep.violations) v.push_back(labels_of(g, s));
      out.emit({{"group", g.name()},
                {"checked", rep.subsets_checked},
                {"skipped", rep.subsets_skipped},
                {"sequenced", rep.sequenced},
                {"pattern_but_sequenced", rep.pattern_but_sequenced},
                {"exceptions", ex},
                {"violations", v},
                {"ok", rep.ok()}},
               !out.json());
      return rep.ok() ? kOk : kNotFound;
    }
    if (strong) {
      const auto rep = strong_sequenceability_scan(g);
      Json f = Json::array();
      for (const auto& s : rep.failures) f.push_back(labels_of(g, s));
      out.emit({{"group", g.name()},
                {"status", to_string(rep.status)},
                {"subsets", rep.subsets},
                {"with_s_sequencing", rep.with_s_sequencing},
                {"with_rotational", rep.with_rotational},
                {"failures", f},
                {"strongly_sequenceable", rep.strongly_sequenceable()}},
               !out.json());
      if (rep.status == SearchStatus::Inconclusive) return kInconclusive;
      return rep.strongly_sequenceable() ? kOk : kNotFound;
    }
    const SearchMode md = parse_mode(mode);
    const int hi = max_size < 0 ? g.order() - 1 : max_size;
    long long found = 0, missing = 0, inconclusive = 0;
    for_each_subset(g, min_size, hi, [&](const std::vector<int>& s) {
      SearchRequest req;
      req.group = &g;
      req.subset = s;
      req.mode = md;
      const auto res = find_s_sequencing(req);
      Json j{{"set", labels_of(g, s)}, {"status", to_string(res.status)}};
      if (res.sequence) {
        j["kind"] = kind_name(res.kind);
        j["sequence"] = labels_of(g, res.sequence->elements);
      }
      out.emit(j, true);
      if (res.status == SearchStatus::Found) ++found;
      else if (res.status == SearchStatus::NotFound) ++missing;
      else ++inconclusive;
    });
    out.emit({{"summary", {{"group", g.name()}, {"found", found}, {"not_found", missing}, {"inconclusive", inconclusive}}}},
             true);
    if (inconclusive) return kInconclusive;
    return missing ? kNotFound : kOk;
  }
};

struct GracefulCmd {
  std::string generator;
  int n = 0, l = 0, d = 0, p = 0, q = 0, r = 0, x = 0, i = 0;
  std::string tail, perm, c;

  int run(Output& out) {
    Perm a;
    if (generator == "walecki") a = walecki(n);
    else if (generator == "odd-l") a = isbell_graceful_odd_l(l, n);
    else if (generator == "cracked-isbell") a = cracked_isbell(l);
    else if (generator == "variant") a = cracked_variant_start(l, d);
    else if (generator == "twizzler") {
      if (!tail.empty()) {
        a = twizzler(n, p, q, r, parse_ints(tail));
      } else {
        auto t = twizzler(n, p, q, r);
        if (!t) throw ConstructionInfeasible("no twizzler tail found");
        a = *t;
      }
    } else if (generator == "bipartite") a = bipartite_with_start(p, x);
    else if (generator == "insertion") a = insertion(parse_ints(perm), i, parse_ints(c));
    else if (generator == "verify") a = parse_ints(perm);
    else throw InvalidParameter("unknown generator '" + generator + "'");
    const bool graceful = verify_graceful(a);
    const auto cracked = verify_cracked(a);
    Json j{{"generator", generator}, {"sequence", a}, {"graceful", graceful}, {"cracked", cracked.ok}};
    if (cracked.ok) j["crack"] = cracked.crack;
    if (generator == "bipartite") j["bipartite"] = verify_bipartite(a);
    if (out.json()) out.emit(j);
    else out.buf << to_string(a) << "\n";
    if (generator == "verify") return graceful || cracked.ok ? kOk : kNotFound;
    return kOk;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"dpseq: sequencings of subsets of dihedral and small groups"};
  app.require_subcommand(1);
  Output out;
  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", out.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    sub->add_option("--out", out.out_file, "write the report to FILE");
  };

  VerifyCmd verify;
  auto* sv = app.add_subcommand("verify", "check a sequence or JSON record");
  verify.group.add(sv);
  sv->add_option("--sequence", verify.sequence, "comma-separated element labels");
  sv->add_option("--in", verify.in_file, "JSON record as emitted by construct/search");
  sv->add_option("--kind", verify.kind, "s-sequencing | rotational | sequencing");
  common(sv);

  SearchCmd search;
  auto* ss = app.add_subcommand("search", "search for an S-sequencing");
  search.group.add(ss);
  ss->add_option("--set", search.set, "comma-separated element labels")->required();
  ss->add_option("--mode", search.mode, "s | rotational | either");
  ss->add_option("--objective", search.objective, "exists | first | count");
  ss->add_option("--budget", search.budget, "node budget for |S| > 12");
  ss->add_option("--threads", search.threads, "worker threads (default DPSEQ_THREADS or 1)");
  common(ss);

  ConstructCmd construct;
  auto* sc = app.add_subcommand("construct", "dihedral constructions");
  sc->add_option("--m", construct.m, "D_{2m}");
  sc->add_option("--exclude", construct.exclude, "element x: sequence D_{2m} minus {e, x}");
  sc->add_flag("--reflection-start", construct.reflection_start, "sequencing starting with a reflection");
  sc->add_option("--isbell", construct.isbell, "first | second-4l3 | second-4l1 | third-4l1 | third-4l3");
  sc->add_option("--ell", construct.ell, "l for --isbell");
  sc->add_option("--input", construct.input, "graceful input for --isbell (default: the standard one)");
  common(sc);

  CoeffCmd coeff;
  auto* so = app.add_subcommand("coeff", "coefficient of a monomial in pi_{r,s}");
  so->add_option("--r", coeff.r)->required();
  so->add_option("--s", coeff.s)->required();
  so->add_option("--monomial", coeff.monomial, "e.g. \"x1^2 x2 x3^2 y1 y2\"");
  so->add_option("--find", coeff.find_bound, "find an admissible monomial with prime factors <= BOUND");
  so->add_option("--prime", coeff.prime, "also test nonvanishing mod this prime");
  common(so);

  TablesCmd tables;
  auto* st = app.add_subcommand("tables", "reproduce the coefficient tables");
  st->add_option("--k", tables.k, "|S| in 5..9 (default all)")->check(CLI::Range(5, 9));
  st->add_option("--format", out.format, "json or text")->check(CLI::IsMember({"json", "text"}));
  st->add_option("--out", out.out_file, "write the report to FILE");

  ScanCmd scan;
  auto* sn = app.add_subcommand("scan", "search every subset of a group");
  scan.group.add(sn);
  sn->add_option("--min-size", scan.min_size);
  sn->add_option("--max-size", scan.max_size);
  sn->add_option("--mode", scan.mode, "s | rotational | either");
  sn->add_flag("--small-k", scan.small_k, "check the |S| <= 4 classification");
  sn->add_flag("--strong", scan.strong, "strong sequenceability summary");
  common(sn);

  GracefulCmd graceful;
  auto* sg = app.add_subcommand("graceful", "graceful permutation generators");
  sg->add_option("--generator", graceful.generator,
                 "walecki | odd-l | cracked-isbell | variant | twizzler | bipartite | insertion | verify")
      ->required();
  sg->add_option("--n", graceful.n);
  sg->add_option("--l", graceful.l);
  sg->add_option("--d", graceful.d);
  sg->add_option("--p", graceful.p);
  sg->add_option("--q", graceful.q);
  sg->add_option("--r", graceful.r);
  sg->add_option("--x", graceful.x);
  sg->add_option("--i", graceful.i);
  sg->add_option("--tail", graceful.tail);
  sg->add_option("--perm", graceful.perm);
  sg->add_option("--c", graceful.c);
  common(sg);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }
  if (st->parsed() && st->count("--format") == 0) out.format = "text";

  int rc = kOk;
  try {
    if (sv->parsed()) rc = verify.run(out);
    else if (ss->parsed()) rc = search.run(out);
    else if (sc->parsed()) rc = construct.run(out);
    else if (so->parsed()) rc = coeff.run(out);
    else if (st->parsed()) rc = tables.run(out);
    else if (sn->parsed()) rc = scan.run(out);
    else if (sg->parsed()) rc = graceful.run(out);
    out.flush();
  } catch (const DocumentedNonexistence& e) {
    std::cerr << "nonexistent: " << e.what() << "\n";
    return kNotFound;
  } catch (const ConstructionInfeasible& e) {
    std::cerr << "inconclusive: " << e.what() << "\n";
    return kInconclusive;
  } catch (const InvalidParameter& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const IngestionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const OutOfScope& e) {
    std::cerr << "out of scope: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kInconclusive;
  }
  return rc;
}
