#include "otarith_cli/commands.hpp"

#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <sstream>

#include "otarith/ideal.hpp"
#include "otarith/numfield.hpp"
#include "otarith/ot_aut.hpp"
#include "otarith/ray_class.hpp"
#include "otarith/residue.hpp"
#include "otarith/units.hpp"

namespace otarith::cli {

namespace {

constexpr int kDigits = 30;

json j(const Int& v) { return v.get_str(); }
json j(const Rational& v) { return v.get_str(); }

json j(const Interval& x) {
  json o;
  o["lo"] = x.lo_string(kDigits);
  o["hi"] = x.hi_string(kDigits);
  return o;
}

json j(std::span<const Int> v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(x.get_str());
  return a;
}

json j(const IntMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) a.push_back(j(m.row(i)));
  return a;
}

json j(const RatMatrix& m) {
  json a = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (const auto& x : m.row(i)) row.push_back(x.get_str());
    a.push_back(row);
  }
  return a;
}

json j(const FieldElement& a) {
  json o = json::array();
  for (const auto& x : a.coords()) o.push_back(x.get_str());
  return o;
}

json j(const FiniteAbelianGroup& g) {
  json o;
  o["elementary_divisors"] = j(std::span<const Int>(g.elementary_divisors()));
  o["order"] = j(g.order());
  return o;
}

json j(const Automorphism& g) {
  QPoly p(g.image_of_theta().power_coords());
  return json{{"theta_image", p.to_string("theta")}, {"identity", g.is_identity()}};
}

json j(const std::vector<Automorphism>& gs) {
  json a = json::array();
  for (const auto& g : gs) a.push_back(j(g));
  return a;
}

json j(const IntegerIdeal& i) { return json{{"hnf", j(i.basis())}, {"norm", j(i.norm())}}; }

json j(const Modulus& m) {
  return json{{"finite_part", j(m.finite_part)}, {"real_multiplicities", m.real_multiplicities}};
}

json j(const UnitBasis& b) {
  json units = json::array();
  for (const auto& u : b.units) units.push_back(j(u));
  json o{{"units", units}, {"provenance", std::string(to_string(b.provenance))}};
  if (!b.certificate.empty()) o["certificate"] = b.certificate;
  return o;
}

json j(const UnitSubgroup& g) {
  json gens = json::array();
  for (const auto& u : g.generators()) gens.push_back(j(u));
  return json{{"generators", gens}, {"rank", g.rank()}};
}

json j(const AdmissibilityCertificate& c) {
  json o{{"admissible", c.admissible}};
  if (!c.failing_clause.empty()) o["failing_clause"] = c.failing_clause;
  if (c.log_determinant) o["log_determinant"] = j(*c.log_determinant);
  o["cited_definition_only"] = c.cited_definition_only;
  return o;
}

json j(const H1Report& h) {
  return json{{"torsion", j(h.torsion)},
              {"free_rank", h.free_rank},
              {"generator_bound", h.generator_bound},
              {"bound_holds", h.bound_holds},
              {"torsion_bound_holds", h.torsion_bound_holds}};
}

class Session {
 public:
  Session(const InputDocument& doc, const Options& opt) : doc_(doc), opt_(opt) {
    field_ = NumberField::build(doc.min_poly, doc.integral_basis);
  }

  const FieldPtr& field() const { return field_; }
  const Options& options() const { return opt_; }

  const UnitBasis& basis() {
    if (basis_) return *basis_;
    if (doc_.units) {
      std::vector<FieldElement> us;
      for (const auto& c : *doc_.units) us.push_back(field_->element(c));
      basis_ = make_unit_basis(field_, std::move(us), UnitProvenance::Input);
    } else if (field_->signature() == Signature{1, 1}) {
      basis_ = rank1_fundamental_unit_search(field_);
    } else {
      fail(ErrorCode::MissingUnitBasis, "no unit basis supplied and the signature is not (1, 1)");
    }
    return *basis_;
  }

  UnitSubgroup subgroup() {
    if (!doc_.subgroup) return UnitSubgroup(field_, basis().units);
    std::vector<FieldElement> gens;
    for (const auto& c : *doc_.subgroup) gens.push_back(field_->element(c));
    return UnitSubgroup(field_, std::move(gens));
  }

  Modulus modulus() {
    if (!doc_.modulus || doc_.modulus->from_subgroup) {
      Modulus m = build_exceptional_modulus(subgroup());
      if (doc_.modulus && doc_.modulus->real_places) m = Modulus(field_, m.finite_part, *doc_.modulus->real_places);
      return m;
    }
    std::vector<FieldElement> gens;
    for (const auto& c : doc_.modulus->finite_generators) gens.push_back(field_->element(c));
    IntegerIdeal m0 = ideal_from_generators(field_, gens);
    std::vector<int> marks = doc_.modulus->real_places.value_or(std::vector<int>(field_->signature().real, 1));
    return Modulus(field_, m0, marks);
  }

  // First subgroup generator, else the first basis unit.
  FieldElement growth_unit() {
    if (doc_.subgroup && !doc_.subgroup->empty()) return field_->element(doc_.subgroup->front());
    return basis().units.front();
  }

 private:
  const InputDocument& doc_;
  Options opt_;
  FieldPtr field_;
  std::optional<UnitBasis> basis_;
};

json field_info(Session& s) {
  const NumberField& k = *s.field();
  json o;
  o["degree"] = k.degree();
  o["min_poly"] = k.min_poly().to_string();
  o["signature"] = {{"s", k.signature().real}, {"t", k.signature().complex}};
  o["poly_discriminant"] = j(k.poly_discriminant());
  o["order_discriminant"] = j(k.discriminant());
  o["power_basis"] = k.is_power_basis();
  o["integral_basis"] = j(k.basis());
  auto emb = k.embeddings(s.options().precision_bits);
  json places = json::array();
  for (const auto& pl : emb->places) {
    if (pl.real)
      places.push_back({{"kind", "real"}, {"theta", j(pl.theta.re)}});
    else
      places.push_back({{"kind", "complex"}, {"theta_re", j(pl.theta.re)}, {"theta_im", j(pl.theta.im)}});
  }
  o["embeddings"] = {{"precision_bits", emb->bits}, {"places", places}};
  o["automorphisms"] = j(k.automorphisms());
  try {
    o["unit_basis"] = j(s.basis());
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MissingUnitBasis) throw;
    o["unit_basis"] = nullptr;
  }
  try {
    GeometricInvariants g = geometric_invariants(s.subgroup());
    o["geometry"] = {{"dimension", g.dimension},
                     {"b1", g.b1},
                     {"b2", g.b2},
                     {"log_determinant", j(g.log_determinant)},
                     {"volume_proxy", j(g.volume_proxy)},
                     {"lck", g.lck},
                     {"lck_basis", g.lck_basis},
                     {"precision_bits", g.precision_bits}};
  } catch (const Error& e) {
    if (!is_refusal(e.code())) throw;
    o["geometry"] = {{"refused", std::string(to_string(e.code()))}, {"reason", e.what()}};
  }
  return o;
}

json aut(Session& s) {
  UnitSubgroup u = s.subgroup();
  std::optional<UnitBasis> basis;
  try {
    basis = s.basis();
  } catch (const Error& e) {
    if (e.code() != ErrorCode::MissingUnitBasis) throw;
  }
  AutFiltrationReport rep = aut_filtration(u, basis);
  json o;
  o["subgroup"] = j(u);
  o["admissibility"] = j(rep.admissibility);
  o["simple_type"] = true;
  o["j_ideal"] = j(rep.j);
  o["gr0"] = j(rep.gr0);
  o["gr0"]["isomorphism"] = "non-canonical";
  o["gr1"] = rep.gr1 ? j(*rep.gr1) : json("unknown");
  o["gr2"] = j(rep.gr2);
  o["gr2_order"] = rep.gr2.size();
  o["chi_f"] = rep.chi_f ? j(*rep.chi_f) : json(nullptr);
  if (basis) o["unit_basis"] = j(*basis);
  return o;
}

json h1(Session& s) { return j(h1_structure(s.subgroup())); }

json ray(Session& s) {
  Modulus m = s.modulus();
  const UnitBasis& b = s.basis();
  RayUnitGroup r = ray_unit_group(m, b, s.options().enum_cap);
  ResidueUnitGroup g(m.finite_part, s.options().enum_cap);
  json o;
  o["modulus"] = j(m);
  o["unit_basis"] = j(b);
  o["ray_unit_group"] = {{"generators", j(r.group)["generators"]}, {"exponents", j(r.exponents)}};
  o["residue_unit_structure"] = j(g.structure());
  o["residue_unit_order"] = j(g.unit_count());
  o["unit_quotient_order"] = j(r.index);
  o["full_unit_quotient_order"] = j(Int(2 * r.index));
  o["j_contained_in_m0"] = m.finite_part.contains(j_ideal(r.group));
  if (m.all_real_marked())
    o["ratio"] = j(ray_ratio(m, b, s.options().enum_cap));
  else
    o["ratio"] = nullptr;
  return o;
}

json exceptional(Session& s) {
  Modulus m = s.modulus();
  ExceptionalVerdict v = is_exceptional(m, s.basis(), s.options().enum_cap);
  json o;
  o["modulus"] = j(m);
  o["exceptional"] = v.exceptional;
  o["j_hnf"] = v.j_hnf ? j(*v.j_hnf) : json(nullptr);
  o["m0_hnf"] = j(v.m0_hnf);
  return o;
}

json inequality(Session& s) {
  Modulus m = s.modulus();
  RayReport r = verify_inequality(m, s.basis(), s.options().enum_cap);
  IntegerIdeal jj = j_ideal(r.ray_units.group);
  Int slack = jj.is_unit_ideal() ? Int(1) : residue_unit_count(jj, s.options().enum_cap);
  json o;
  o["modulus"] = j(m);
  o["ray_unit_group"] = j(r.ray_units.group);
  o["lhs"] = j(r.ratio);
  o["rhs"] = j(r.rhs);
  o["holds"] = r.inequality_holds;
  o["equality"] = r.equality;
  o["residue_unit_order"] = j(r.residue_unit_order);
  o["unit_quotient_order"] = j(r.unit_quotient_order);
  o["full_unit_quotient_order"] = j(r.full_unit_quotient_order);
  o["chi_f"] = j(r.chi_f);
  o["au_order"] = j(r.au_order);
  o["slack"] = {{"residue_units_mod_j", j(slack)}, {"residue_ring_order", j(r.residue_ring_order)}};
  return o;
}

json growth_json(const GrowthReport& g) {
  json terms = json::array();
  for (const auto& t : g.terms) terms.push_back({{"n", t.n}, {"torsion", j(t.torsion)}, {"log_term", j(t.log_term)}});
  json o;
  o["unit"] = j(g.unit);
  o["min_poly"] = min_poly(g.unit).to_string();
  o["horizon"] = g.terms.size();
  o["terms"] = terms;
  o["mahler"] = j(g.mahler);
  o["log_mahler"] = j(g.log_mahler);
  o["limit_gap"] = j(g.limit_gap);
  o["half_gap"] = j(g.half_gap);
  o["trend_certified"] = g.trend_certified;
  o["kronecker_guard"] = kronecker_guard(g.unit);
  return o;
}

json chain(Session& s, const CommandArgs& args) {
  FieldElement u = s.growth_unit();
  json levels = json::array();
  for (const auto& l : covering_chain(u, args.prime, args.depth))
    levels.push_back({{"n", l.n}, {"torsion", j(l.torsion)}, {"h1", j(l.h1)}, {"divides_next", l.divides_next}});
  return json{{"unit", j(u)}, {"prime", args.prime}, {"depth", args.depth}, {"levels", levels}};
}

json verify(Session& s) {
  json checks = json::array();
  bool all_ok = true;
  auto run = [&](const std::string& name, const std::function<std::string()>& body) {
    json c{{"name", name}};
    try {
      std::string detail = body();
      bool ok = detail.rfind("FAIL", 0) != 0;
      c["status"] = ok ? "ok" : "failed";
      c["detail"] = detail;
      all_ok = all_ok && ok;
    } catch (const Error& e) {
      bool refusal = is_refusal(e.code());
      c["status"] = refusal ? "skipped" : "failed";
      c["detail"] = std::string(to_string(e.code())) + ": " + e.what();
      all_ok = all_ok && refusal;
    }
    checks.push_back(c);
  };
  const NumberField& k = *s.field();
  const std::uint64_t cap = s.options().enum_cap;

  run("field.discriminant_index", [&] {
    Rational idx = k.power_order_index();
    bool ok = Rational(k.poly_discriminant()) == Rational(k.discriminant()) * idx * idx;
    return std::string(ok ? "" : "FAIL ") + "disc(f) = disc(order) [order : Z[theta]]^2";
  });
  run("field.automorphisms_closed", [&] {
    const auto& au = k.automorphisms();
    for (const auto& a : au)
      for (const auto& b : au)
        if (std::find(au.begin(), au.end(), a.compose(b)) == au.end()) return std::string("FAIL composition leaves the set");
    return std::to_string(au.size()) + " automorphisms";
  });
  run("units.admissible", [&] {
    auto c = is_admissible(s.subgroup());
    return c.admissible ? std::string("admissible") : "FAIL " + c.failing_clause;
  });
  run("aut.chi_f_definition", [&] {
    auto rep = aut_filtration(s.subgroup(), s.basis());
    bool ok = *rep.chi_f * Rational(*rep.gr1_order()) == Rational(rep.gr0.order() * Int(rep.gr2.size()));
    return std::string(ok ? "" : "FAIL ") + "chi_f = " + rep.chi_f->get_str();
  });
  run("aut.au_preserves_u", [&] {
    UnitSubgroup u = s.subgroup();
    for (const auto& g : compute_au(u)) {
      std::vector<FieldElement> img;
      for (const auto& x : u.generators()) img.push_back(g(x));
      if (lattice_index(exponent_matrix(img, u.generators()), IntMatrix::identity(u.rank())) != 1)
        return std::string("FAIL g(U) is a proper subgroup");
    }
    return std::string("g(U) = U for every g in A_U");
  });
  run("aut.group_law", [&] {
    AutGroup a(s.subgroup(), s.basis());
    std::mt19937_64 rng(1);
    for (int i = 0; i < 200; ++i) {
      auto x = a.random(rng), y = a.random(rng), z = a.random(rng);
      if (!(a.compose(a.compose(x, y), z) == a.compose(x, a.compose(y, z)))) return std::string("FAIL associativity");
      if (!(a.compose(a.identity(), x) == x) || !(a.compose(x, a.identity()) == x)) return std::string("FAIL identity");
      if (!(a.compose(x, a.inverse(x)) == a.identity())) return std::string("FAIL inverse");
    }
    return std::string("200 random triples");
  });
  run("aut.dietz", [&] {
    UnitSubgroup u = s.subgroup();
    AutGroup a(u, s.basis());
    std::mt19937_64 rng(2);
    for (int i = 0; i < 20; ++i) {
      auto v = verify_dietz_triple(u, a.induced_dietz_triple(a.random(rng)), 8);
      if (!v.ok) return "FAIL induced triple: " + v.witness;
    }
    std::size_t tried = 0;
    for (const auto& t : a.pure_translations()) {
      if (++tried > 16) break;
      auto v = verify_dietz_triple(u, dietz_coboundary(u, a.translation_element(t)), 8);
      if (!v.ok) return "FAIL coboundary: " + v.witness;
    }
    if (u.rank() > 0 && verify_dietz_triple(u, dietz_constant(u, k.one())).ok)
      return std::string("FAIL constant triple accepted");
    return std::string("induced and coboundary triples accepted, constant rejected");
  });
  run("h1.bound", [&] {
    H1Report h = h1_structure(s.subgroup());
    return std::string(h.bound_holds ? "" : "FAIL ") + std::to_string(h.torsion.invariant_factor_count()) + " + " +
           std::to_string(h.free_rank) + " <= " + std::to_string(h.generator_bound);
  });
  run("ray.easy_inclusion", [&] {
    Modulus m = s.modulus();
    if (!m.all_real_marked()) return std::string("not every real place marked");
    RayUnitGroup r = ray_unit_group(m, s.basis(), cap);
    return std::string(m.finite_part.contains(j_ideal(r.group)) ? "" : "FAIL ") + "J(U_m,1) in m0";
  });
  run("ray.exceptional_converse", [&] {
    Modulus m = build_exceptional_modulus(s.subgroup());
    return std::string(is_exceptional(m, s.basis(), cap).exceptional ? "" : "FAIL ") + "J(U_m,1) = J(U)";
  });
  run("ray.inequality", [&] {
    RayReport r = verify_inequality(s.modulus(), s.basis(), cap);
    return std::string(r.inequality_holds ? "" : "FAIL ") + r.ratio.get_str() + " <= " + r.rhs.get_str();
  });
  run("residue.cross_check", [&] {
    Modulus m = s.modulus();
    if (m.finite_part.is_unit_ideal()) return std::string("trivial modulus");
    ResidueUnitCount c = residue_unit_count_detail(m.finite_part, cap);
    std::string how = std::string(c.by_enumeration ? "enumeration" : "") + (c.by_euler_phi ? " euler-phi" : "");
    return "|(O/m0)^x| = " + c.count.get_str() + " by" + how;
  });
  run("torsion.oracles", [&] {
    FieldElement u = s.growth_unit();
    ZPoly f = min_poly(u);
    for (unsigned long n = 1; n <= 16; ++n) {
      Int t = torsion_order(u, n);
      if (t != torsion_order_resultant(u, n)) return "FAIL resultant at n = " + std::to_string(n);
      if (static_cast<std::size_t>(f.degree()) == k.degree() && !cyclotomic_product(f, n).contains(Rational(t)))
        return "FAIL cyclotomic product at n = " + std::to_string(n);
    }
    for (unsigned long n = 1; n <= 6; ++n)
      for (unsigned long m = 1; m <= 6; ++m)
        if (torsion_order(u, n * m) % torsion_order(u, n) != 0) return "FAIL divisibility at " + std::to_string(n);
    return std::string("determinant = resultant = cyclotomic product for n <= 16");
  });
  run("torsion.kronecker", [&] {
    return std::string(kronecker_guard(s.growth_unit()) ? "" : "FAIL ") + "some embedding off the unit circle";
  });
  run("growth.gap", [&] {
    GrowthReport g = growth_report(s.growth_unit(), s.options().horizon, s.options().precision_bits);
    bool ok = g.limit_gap.certainly_less(0.02);
    return std::string(ok ? "" : "FAIL ") + "gap <= " + g.limit_gap.hi_string(6);
  });
  return json{{"checks", checks}, {"passed", all_ok}};
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names{"field-info", "aut",  "h1",    "ray",    "exceptional",
                                              "inequality", "growth", "chain", "verify", "corpus"};
  return names;
}

GrowthReport run_growth(const InputDocument& doc, const Options& opt) {
  Session s(doc, opt);
  return growth_report(s.growth_unit(), opt.horizon, opt.precision_bits);
}

std::string growth_csv(const GrowthReport& rep) {
  std::ostringstream out;
  out << "n,torsion,log_term_lo,log_term_hi\n";
  for (const auto& t : rep.terms)
    out << t.n << ',' << t.torsion.get_str() << ',' << t.log_term.lo_string(kDigits) << ','
        << t.log_term.hi_string(kDigits) << '\n';
  return out.str();
}

std::string growth_summary(const GrowthReport& rep) {
  std::ostringstream out;
  out << "log M(f) in [" << rep.log_mahler.lo_string(12) << ", " << rep.log_mahler.hi_string(12) << "]\n"
      << "gap at n=" << rep.terms.size() << " <= " << rep.limit_gap.hi_string(6) << ", at n=" << rep.terms.size() / 2
      << " >= " << rep.half_gap.lo_string(6) << (rep.trend_certified ? " (decreasing)" : " (trend not certified)")
      << '\n';
  return out.str();
}

json run_command(std::string_view cmd, const InputDocument& doc, const Options& opt, const CommandArgs& args) {
  Session s(doc, opt);
  if (cmd == "field-info") return field_info(s);
  if (cmd == "aut") return aut(s);
  if (cmd == "h1") return h1(s);
  if (cmd == "ray") return ray(s);
  if (cmd == "exceptional") return exceptional(s);
  if (cmd == "inequality") return inequality(s);
  if (cmd == "growth") return growth_json(growth_report(s.growth_unit(), opt.horizon, opt.precision_bits));
  if (cmd == "chain") return chain(s, args);
  if (cmd == "verify") return verify(s);
  fail(ErrorCode::ParseError, "unknown subcommand: " + std::string(cmd));
}

json report(std::string_view cmd, const InputDocument& doc, const Options& opt, json result) {
  json o;
  o["tool"] = "otarith";
  o["version"] = std::string(kToolVersion);
  o["command"] = std::string(cmd);
  o["options"] = {{"precision_bits", opt.precision_bits},
                  {"enum_cap", std::to_string(opt.enum_cap)},
                  {"horizon", opt.horizon}};
  o["input"] = doc.source;
  o["result"] = std::move(result);
  return o;
}

json error_report(std::string_view cmd, ErrorCode code, const std::string& message) {
  json o;
  o["tool"] = "otarith";
  o["version"] = std::string(kToolVersion);
  o["command"] = std::string(cmd);
  o["error"] = {{"code", std::string(to_string(code))}, {"refusal", is_refusal(code)}, {"message", message}};
  return o;
}

int exit_code(ErrorCode code) { return is_refusal(code) ? 2 : 1; }

}  // namespace otarith::cli
