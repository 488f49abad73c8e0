// Command-line surface for the Fourier-Mukai partner toolkit. Every command
// prints a single JSON document on stdout; exit code 0 means success, 1 means
// a verification found counterexamples, 2 means the input was rejected.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "fmk3/fmk3.hpp"

namespace {

using namespace fmk3;

constexpr int kExitSuccess = 0;
constexpr int kExitVerificationFailed = 1;
constexpr int kExitInvalidInput = 2;

std::size_t isometry_bound() {
  const char* s = std::getenv("FM_ISOM_BOUND");
  if (s == nullptr) return kDefaultIsometryBound;
  try {
    const long long v = std::stoll(s);
    require(v > 0, "FM_ISOM_BOUND must be positive");
    return static_cast<std::size_t>(v);
  } catch (const std::invalid_argument&) {
    throw;
  } catch (const std::exception&) {
    throw std::invalid_argument("FM_ISOM_BOUND is not a valid integer");
  }
}

json int_list(const std::vector<Int>& v) {
  json a = json::array();
  for (const Int& x : v) a.push_back(static_cast<long long>(x));
  return a;
}

json vector_json(const ExtendedNSVector& v) {
  return int_list({v.a, v.c, v.b});
}

json tuple_json(const HyperbolicTuple& t) {
  json j;
  j["r"] = static_cast<long long>(t.r);
  j["s"] = static_cast<long long>(t.s);
  j["l"] = static_cast<long long>(t.l);
  j["k"] = static_cast<long long>(t.k);
  j["m"] = static_cast<long long>(t.m);
  return j;
}

// ---- partners ----

json run_partners(long long n) {
  require(n >= 1, "n must be a positive integer");
  json out;
  out["status"] = "success";
  out["command"] = "partners";
  out["n"] = n;
  const int tau = num_prime_divisors(n);
  out["tau"] = tau;
  out["predicted_count"] =
      static_cast<long long>(pow2(static_cast<unsigned>(std::max(tau, 1) - 1)));
  const auto partners = enumerate_partners(n);
  out["count"] = partners.size();
  json list = json::array();
  for (const auto& p : partners) {
    json e;
    e["r"] = static_cast<long long>(p.r);
    e["s"] = static_cast<long long>(p.s);
    e["mukai_vector"] = int_list({p.r, Int(1), p.s});
    list.push_back(std::move(e));
  }
  out["partners"] = std::move(list);
  return out;
}

// ---- count ----

json run_count_rank1(long long n) {
  json out;
  out["status"] = "success";
  out["command"] = "count";
  out["mode"] = "rank1";
  out["n"] = n;
  out["count"] = rank1_fm_count(n, isometry_bound());
  return out;
}

json run_count_rank2(long long p) {
  json out;
  out["status"] = "success";
  out["command"] = "count";
  out["mode"] = "rank2";
  out["p"] = p;
  out["wide_class_number"] = wide_class_number(p);
  out["count"] = rank2_fm_count(p);
  return out;
}

json run_count_general(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), "cannot open counting input file: " + path);
  json doc;
  try {
    in >> doc;
  } catch (const json::parse_error& e) {
    throw std::invalid_argument("counting input " + path + ": " + e.what());
  }
  const auto input = counting_input_from_json(doc, isometry_bound());
  const auto result = fm_count(input, isometry_bound());
  json out;
  out["status"] = "success";
  out["command"] = "count";
  out["mode"] = "general";
  out["count"] = result.total;
  out["per_class"] = result.per_class;
  return out;
}

// ---- verify ----

struct VerifyOutcome {
  json payload;
  bool ok;
};

VerifyOutcome verify_hyperbolic_pairs(long long n) {
  require(n >= 1, "n must be a positive integer");
  json checks = json::array();
  bool all_ok = true;
  for (const auto& p : enumerate_partners(n)) {
    json c;
    c["r"] = static_cast<long long>(p.r);
    c["s"] = static_cast<long long>(p.s);
    auto sol = solve_hyperbolic_partner(n, p.r, p.s, n);
    if (!sol) {
      c["ok"] = false;
      c["error"] = "no hyperbolic completion within k bound";
      all_ok = false;
      checks.push_back(std::move(c));
      continue;
    }
    c["u"] = int_list({sol->l, sol->k, sol->m});
    const auto pi = orthogonal_complement_generator(n, p.r, p.s, *sol);
    c["orthogonal_generator"] = vector_json(pi);
    const ExtendedNSVector u{sol->l, sol->k, sol->m, Int(n)};
    const ExtendedNSVector v{p.r, Int(1), p.s, Int(n)};
    const Int self = mukai_pairing(pi, pi);
    const Int inv_gcd =
        gcd_int(hyperbolic_invariant({p.r, p.s, sol->l, sol->k, sol->m}),
                Int(2 * n));
    c["pi_dot_u"] = static_cast<long long>(mukai_pairing(pi, u));
    c["pi_dot_v"] = static_cast<long long>(mukai_pairing(pi, v));
    c["pi_self_pairing"] = static_cast<long long>(self);
    c["invariant_gcd"] = static_cast<long long>(inv_gcd);
    const bool ok = mukai_pairing(pi, u) == 0 && mukai_pairing(pi, v) == 0 &&
                    self == Int(2 * n) && inv_gcd == 1;
    c["ok"] = ok;
    all_ok = all_ok && ok;
    checks.push_back(std::move(c));
  }
  json payload;
  payload["n"] = n;
  payload["pairs_checked"] = checks.size();
  payload["checks"] = std::move(checks);
  return VerifyOutcome{std::move(payload), all_ok};
}

VerifyOutcome verify_invariant_collisions(long long n, long long bound,
                                          bool with_signed) {
  require(n >= 1 && bound >= 1, "n and bound must be positive");
  const auto violations = search_invariant_collisions(n, bound);
  json payload;
  payload["n"] = n;
  payload["bound"] = bound;
  json list = json::array();
  for (const auto& v : violations) {
    json e;
    e["first"] = tuple_json(v.first);
    e["second"] = tuple_json(v.second);
    e["sign"] = v.sign;
    list.push_back(std::move(e));
  }
  payload["counterexamples"] = std::move(list);
  if (with_signed) {
    // diagnostic repeat over signed l, k, m: reported, never asserted
    const auto signed_violations = search_invariant_collisions(n, bound, true);
    json diag = json::array();
    for (const auto& v : signed_violations) {
      json e;
      e["first"] = tuple_json(v.first);
      e["second"] = tuple_json(v.second);
      e["sign"] = v.sign;
      diag.push_back(std::move(e));
    }
    payload["signed_diagnostic"] = std::move(diag);
  }
  return VerifyOutcome{std::move(payload), violations.empty()};
}

VerifyOutcome verify_covering_quotient(long long n) {
  require(n >= 2, "n must be at least 2");
  const std::size_t bound = isometry_bound();
  const auto a =
      discriminant_form(standard_lattice(StandardLattice::lambda_n, n));
  const long long group_order =
      static_cast<long long>(enumerate_isometries(a, bound).order());
  const long long quotient = gamma_quotient_order(n, bound);
  const long long expected = static_cast<long long>(
      pow2(static_cast<unsigned>(num_prime_divisors(n) - 1)));
  json payload;
  payload["n"] = n;
  payload["isometry_group_order"] = group_order;
  payload["quotient_order"] = quotient;
  payload["expected"] = expected;
  const bool ok = group_order == 2 * expected && quotient == expected;
  return VerifyOutcome{std::move(payload), ok};
}

VerifyOutcome verify_all(long long nmax) {
  require(nmax >= 2, "nmax must be at least 2");
  const std::size_t bound = isometry_bound();
  json payload;
  payload["nmax"] = nmax;
  bool all_ok = true;

  {  // three independent computations of the partner count
    json rows = json::array();
    bool ok = true;
    for (long long n = 2; n <= nmax; ++n) {
      const long long by_partners =
          static_cast<long long>(enumerate_partners(n).size());
      const long long by_cosets = rank1_fm_count(n, bound);
      const long long by_covering = gamma_quotient_order(n, bound);
      const long long predicted = static_cast<long long>(
          pow2(static_cast<unsigned>(num_prime_divisors(n) - 1)));
      const bool row_ok = by_partners == by_cosets &&
                          by_cosets == by_covering &&
                          by_covering == predicted;
      ok = ok && row_ok;
      json row;
      row["n"] = n;
      row["partners"] = by_partners;
      row["double_cosets"] = by_cosets;
      row["covering_quotient"] = by_covering;
      row["predicted"] = predicted;
      if (!row_ok) row["ok"] = false;
      rows.push_back(std::move(row));
    }
    json block;
    block["ok"] = ok;
    block["table"] = std::move(rows);
    payload["count_agreement"] = std::move(block);
    all_ok = all_ok && ok;
  }

  {  // pinned values of the prime-divisor count
    const bool ok = num_prime_divisors(12) == 2 && num_prime_divisors(6) == 2 &&
                    num_prime_divisors(8) == 1 && num_prime_divisors(2) == 1;
    json block;
    block["ok"] = ok;
    payload["tau_samples"] = std::move(block);
    all_ok = all_ok && ok;
  }

  {  // hyperbolic pair construction for every partner
    bool ok = true;
    for (long long n = 1; n <= nmax; ++n)
      ok = ok && verify_hyperbolic_pairs(n).ok;
    json block;
    block["ok"] = ok;
    payload["hyperbolic_pairs"] = std::move(block);
    all_ok = all_ok && ok;
  }

  {  // invariant collision search at the pinned scale
    const long long n_lim = std::min<long long>(nmax, 20);
    bool ok = true;
    long long total = 0;
    for (long long n = 1; n <= n_lim; ++n) {
      const auto v = search_invariant_collisions(n, 12);
      total += static_cast<long long>(v.size());
      ok = ok && v.empty();
    }
    json block;
    block["ok"] = ok;
    block["n_max"] = n_lim;
    block["bound"] = 12;
    block["counterexamples"] = total;
    payload["invariant_collisions"] = std::move(block);
    all_ok = all_ok && ok;
  }

  {  // isometry group orders on both lattice families
    bool ok = true;
    for (long long n = 2; n <= nmax; ++n) {
      const long long expected = static_cast<long long>(
          pow2(static_cast<unsigned>(num_prime_divisors(n))));
      const auto a1 =
          discriminant_form(standard_lattice(StandardLattice::rank1, 2 * n));
      const auto a2 =
          discriminant_form(standard_lattice(StandardLattice::lambda_n, n));
      ok = ok &&
           static_cast<long long>(enumerate_isometries(a1, bound).order()) ==
               expected &&
           static_cast<long long>(enumerate_isometries(a2, bound).order()) ==
               expected;
    }
    json block;
    block["ok"] = ok;
    payload["isometry_group_orders"] = std::move(block);
    all_ok = all_ok && ok;
  }

  {  // rank-2 counts at the pinned primes
    const bool ok = rank2_fm_count(5) == 1 && rank2_fm_count(13) == 1 &&
                    rank2_fm_count(229) == 2 && wide_class_number(5) == 1 &&
                    wide_class_number(13) == 1 && wide_class_number(229) == 3;
    json block;
    block["ok"] = ok;
    payload["rank2_counts"] = std::move(block);
    all_ok = all_ok && ok;
  }

  {  // genus with two isometry classes: the determinant -229 witness pair
    const IntegerLattice la(IntMatrix{{Int(2), Int(15)}, {Int(15), Int(-2)}});
    const IntegerLattice lb(IntMatrix{{Int(6), Int(13)}, {Int(13), Int(-10)}});
    const bool genus = same_genus(la, lb, bound);
    const bool isometric_within_bound = brute_equiv_oracle(
        {Int(1), Int(15), Int(-1)}, {Int(3), Int(13), Int(-5)}, 20,
        UnimodularGroup::gl2);
    json block;
    block["same_genus"] = genus;
    block["isometric_within_bound"] = isometric_within_bound;
    block["ok"] = genus && !isometric_within_bound;
    all_ok = all_ok && (genus && !isometric_within_bound);
    payload["genus_witness"] = std::move(block);
  }

  return VerifyOutcome{std::move(payload), all_ok};
}

// ---- lattice ----

json run_lattice_disc(const std::string& path) {
  const auto l = load_lattice_file(path);
  const auto f = discriminant_form(l);
  json out;
  out["status"] = "success";
  out["command"] = "lattice";
  out["action"] = "disc";
  if (!l.label().empty()) out["label"] = l.label();
  out.update(disc_form_to_json(f));
  out["group_order"] = static_cast<long long>(f.group_order());
  return out;
}

json run_lattice_signature(const std::string& path) {
  const auto l = load_lattice_file(path);
  const auto sig = signature(l);
  json out;
  out["status"] = "success";
  out["command"] = "lattice";
  out["action"] = "signature";
  if (!l.label().empty()) out["label"] = l.label();
  out["positive"] = sig.positive;
  out["negative"] = sig.negative;
  return out;
}

json run_lattice_genus_check(const std::string& path1,
                             const std::string& path2) {
  const auto l1 = load_lattice_file(path1);
  const auto l2 = load_lattice_file(path2);
  const std::size_t bound = isometry_bound();
  json out;
  out["status"] = "success";
  out["command"] = "lattice";
  out["action"] = "genus-check";
  const auto s1 = signature(l1), s2 = signature(l2);
  if (!(s1 == s2)) {
    out["same_genus"] = false;
    out["reason"] = "signature mismatch";
    return out;
  }
  const auto w =
      isomorphism_witness(discriminant_form(l1), discriminant_form(l2), bound);
  if (!w) {
    out["same_genus"] = false;
    out["reason"] = "discriminant forms not isomorphic";
    return out;
  }
  out["same_genus"] = true;
  out["witness"] = isometry_to_json(*w);
  return out;
}

void emit(const json& doc, bool pretty) {
  std::cout << (pretty ? doc.dump(2) : doc.dump()) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Fourier-Mukai partner arithmetic for K3 surfaces"};
  app.require_subcommand(1);
  bool pretty = false;
  app.add_flag("--pretty", pretty, "indent the JSON output");

  // partners
  long long partners_n = 0;
  auto* partners = app.add_subcommand(
      "partners", "enumerate the partner moduli labels for degree 2n");
  partners->add_option("n", partners_n, "half the polarization degree")
      ->required();

  // count
  long long count_rank1 = 0, count_rank2 = 0;
  std::string count_general;
  auto* count = app.add_subcommand("count", "partner counts");
  auto* o1 = count->add_option("--rank1", count_rank1,
                               "Picard number 1, degree 2n: pass n");
  auto* o2 = count->add_option("--rank2", count_rank2,
                               "Picard number 2, determinant -p: pass p");
  auto* o3 =
      count->add_option("--general", count_general, "counting input JSON file");
  o1->excludes(o2)->excludes(o3);
  o2->excludes(o3);

  // verify
  auto* verify = app.add_subcommand("verify", "re-run the verification suites");
  verify->require_subcommand(1);
  long long v_n = 0, v_bound = 10, v_nmax = 20;
  bool v_signed = false;
  auto* lemma23 = verify->add_subcommand(
      "lemma23", "hyperbolic pair and orthogonal generator identities");
  lemma23->add_option("--n", v_n, "degree parameter")->required();
  auto* lemma25 = verify->add_subcommand(
      "lemma25", "invariant collision search over natural solutions");
  lemma25->add_option("--n", v_n, "degree parameter")->required();
  lemma25->add_option("--bound", v_bound, "k bound of the search box");
  lemma25->add_flag("--signed", v_signed,
                    "also report the signed-coefficient diagnostic");
  auto* nseq = verify->add_subcommand(
      "nseq", "isometry group and covering quotient orders");
  nseq->add_option("--n", v_n, "degree parameter")->required();
  auto* vall = verify->add_subcommand("all", "every verification table");
  vall->add_option("--nmax", v_nmax, "largest degree parameter");

  // lattice
  auto* lattice = app.add_subcommand("lattice", "lattice file queries");
  lattice->require_subcommand(1);
  std::string file1, file2;
  auto* disc = lattice->add_subcommand("disc", "discriminant form");
  disc->add_option("file", file1, "lattice JSON file")->required();
  auto* sig = lattice->add_subcommand("signature", "exact inertia");
  sig->add_option("file", file1, "lattice JSON file")->required();
  auto* genus =
      lattice->add_subcommand("genus-check", "signature and discriminant form");
  genus->add_option("file1", file1, "first lattice JSON file")->required();
  genus->add_option("file2", file2, "second lattice JSON file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    json err;
    err["status"] = "invalid_input";
    err["error"] = e.what();
    emit(err, pretty);
    return kExitInvalidInput;
  }

  try {
    if (*partners) {
      emit(run_partners(partners_n), pretty);
      return kExitSuccess;
    }
    if (*count) {
      if (*o1)
        emit(run_count_rank1(count_rank1), pretty);
      else if (*o2)
        emit(run_count_rank2(count_rank2), pretty);
      else if (*o3)
        emit(run_count_general(count_general), pretty);
      else
        throw std::invalid_argument(
            "count: pass one of --rank1, --rank2, --general");
      return kExitSuccess;
    }
    if (*verify) {
      VerifyOutcome outcome{json{}, false};
      std::string which;
      if (*lemma23) {
        outcome = verify_hyperbolic_pairs(v_n);
        which = "lemma23";
      } else if (*lemma25) {
        outcome = verify_invariant_collisions(v_n, v_bound, v_signed);
        which = "lemma25";
      } else if (*nseq) {
        outcome = verify_covering_quotient(v_n);
        which = "nseq";
      } else {
        outcome = verify_all(v_nmax);
        which = "all";
      }
      json out;
      out["status"] = outcome.ok ? "success" : "verification_failed";
      out["command"] = "verify";
      out["target"] = which;
      out.update(outcome.payload);
      emit(out, pretty);
      return outcome.ok ? kExitSuccess : kExitVerificationFailed;
    }
    if (*lattice) {
      if (*disc)
        emit(run_lattice_disc(file1), pretty);
      else if (*sig)
        emit(run_lattice_signature(file1), pretty);
      else
        emit(run_lattice_genus_check(file1, file2), pretty);
      return kExitSuccess;
    }
  } catch (const std::invalid_argument& e) {
    json err;
    err["status"] = "invalid_input";
    err["error"] = e.what();
    emit(err, pretty);
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    json err;
    err["status"] = "invalid_input";
    err["error"] = std::string("internal error: ") + e.what();
    emit(err, pretty);
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}
