#pragma once

#include <json.hpp>

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "hochkit/algebra.hpp"
#include "hochkit/bimodule.hpp"
#include "hochkit/compare.hpp"
#include "hochkit/cover.hpp"
#include "hochkit/gerstenhaber.hpp"
#include "hochkit/lincat.hpp"
#include "hochkit/space.hpp"

namespace hochkit {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

inline Json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open file: " + path);
  Json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw ValidationError("parse error in " + path + ": " + e.what());
  }
  return j;
}

inline void save_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write file: " + path);
  out << text;
}

inline std::string json_text(const Json& j) { return j.dump(2) + "\n"; }

inline std::string file_kind(const Json& j) { return j.value("kind", std::string("category")); }

inline ScalarSpec file_scalars(const Json& j) {
  return ScalarSpec::parse(j.value("scalars", std::string("rational")));
}

// ---- categories ----

template <class S>
Json write_category(const FinLinCat<S>& c) {
  const Field<S>& k = c.field;
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "category";
  j["scalars"] = k.spec().name();
  j["objects"] = c.objects;
  Json homs = Json::array();
  for (auto& [key, h] : c.homs) {
    Json e;
    e["from"] = c.objects[key.first];
    e["to"] = c.objects[key.second];
    Json basis = Json::array();
    for (Index i = 0; i < h.dim(); ++i)
      basis.push_back(Json{{"label", h.labels[i]}, {"degree", h.degs[i]}});
    e["basis"] = basis;
    Json diff = Json::array();
    for (Index col = 0; col < h.dim(); ++col)
      for (Index row = 0; row < h.dim(); ++row)
        if (!is_zero(h.diff(row, col)))
          diff.push_back(Json{{"of", h.labels[col]}, {"h", h.labels[row]}, {"c", k.str(h.diff(row, col))}});
    if (!diff.empty()) e["differential"] = diff;
    homs.push_back(e);
  }
  j["homs"] = homs;
  Json comp = Json::array();
  for (auto& [key, sm] : c.comp) {
    auto [a, b, cc] = key;
    const HomSpace<S>* hbc = c.hom(b, cc);
    const HomSpace<S>* hab = c.hom(a, b);
    const HomSpace<S>* hac = c.hom(a, cc);
    for (auto& [gf, terms] : sm.terms) {
      if (terms.empty()) continue;
      Json e;
      e["at"] = Json::array({c.objects[a], c.objects[b], c.objects[cc]});
      e["g"] = hbc->labels[gf.first];
      e["f"] = hab->labels[gf.second];
      Json res = Json::array();
      for (auto& [h, coeff] : terms)
        res.push_back(Json{{"h", hac->labels[h]}, {"c", k.str(coeff)}});
      e["result"] = res;
      comp.push_back(e);
    }
  }
  j["composition"] = comp;
  Json ids;
  for (Index a = 0; a < c.n_objects(); ++a) {
    const HomSpace<S>* haa = c.hom(a, a);
    Json terms = Json::array();
    const Vec<S>& id = c.identity(a);
    for (Index i = 0; i < id.size(); ++i)
      if (!is_zero(id(i))) terms.push_back(Json{{"h", haa->labels[i]}, {"c", k.str(id(i))}});
    ids[c.objects[a]] = terms;
  }
  j["identities"] = ids;
  if (c.censoring) {
    Json rel = Json::array();
    for (Index a = 0; a < c.n_objects(); ++a)
      for (Index b = 0; b < c.n_objects(); ++b)
        if (c.censoring->has(a, b)) rel.push_back(Json::array({c.objects[a], c.objects[b]}));
    j["censoring"] = rel;
  }
  return j;
}

template <class S>
FinLinCat<S> read_category(const Json& j, const Field<S>& k) {
  if (file_kind(j) != "category") throw ValidationError("expected a category file");
  if (!(file_scalars(j) == k.spec()))
    throw ValidationError("scalar kind mismatch: file has " + file_scalars(j).name() +
                          ", expected " + k.spec().name());
  FinLinCat<S> c;
  c.field = k;
  c.objects = j.at("objects").get<std::vector<std::string>>();
  if (!std::is_sorted(c.objects.begin(), c.objects.end()))
    throw ValidationError("objects must be listed sorted");
  for (auto& e : j.at("homs")) {
    Index a = c.obj_index(e.at("from").get<std::string>());
    Index b = c.obj_index(e.at("to").get<std::string>());
    HomSpace<S> h;
    for (auto& be : e.at("basis")) {
      h.labels.push_back(be.at("label").get<std::string>());
      h.degs.push_back(be.value("degree", 0));
    }
    h.diff = zero_mat<S>(h.dim(), h.dim());
    if (e.contains("differential"))
      for (auto& de : e.at("differential"))
        h.diff(h.label_index(de.at("h").get<std::string>()),
               h.label_index(de.at("of").get<std::string>())) = k.parse(de.at("c").get<std::string>());
    if (h.dim() > 0) c.homs[{a, b}] = std::move(h);
  }
  if (j.contains("composition"))
    for (auto& e : j.at("composition")) {
      auto at = e.at("at").get<std::vector<std::string>>();
      if (at.size() != 3) throw ValidationError("composition 'at' needs three objects");
      Index a = c.obj_index(at[0]), b = c.obj_index(at[1]), cc = c.obj_index(at[2]);
      const HomSpace<S>* hbc = c.hom(b, cc);
      const HomSpace<S>* hab = c.hom(a, b);
      const HomSpace<S>* hac = c.hom(a, cc);
      if (!hbc || !hab || !hac) throw ValidationError("composition entry on a zero hom");
      Index g = hbc->label_index(e.at("g").get<std::string>());
      Index f = hab->label_index(e.at("f").get<std::string>());
      for (auto& re : e.at("result"))
        c.comp[{a, b, cc}].add(g, f, hac->label_index(re.at("h").get<std::string>()),
                               k.parse(re.at("c").get<std::string>()));
    }
  c.identities.resize(c.n_objects());
  for (Index a = 0; a < c.n_objects(); ++a) {
    const HomSpace<S>* haa = c.hom(a, a);
    Vec<S> id = Vec<S>::Constant(haa ? haa->dim() : 0, S(0));
    c.identities[a] = id;
  }
  if (j.contains("identities"))
    for (auto& [name, terms] : j.at("identities").items()) {
      Index a = c.obj_index(name);
      const HomSpace<S>* haa = c.hom(a, a);
      if (!haa) {
        if (!terms.empty()) throw ValidationError("identity on a zero hom at " + name);
        continue;
      }
      for (auto& te : terms)
        c.identities[a](haa->label_index(te.at("h").template get<std::string>())) =
            k.parse(te.at("c").template get<std::string>());
    }
  if (j.contains("censoring")) {
    Relation rel(c.n_objects());
    for (auto& pr : j.at("censoring")) {
      auto p = pr.get<std::vector<std::string>>();
      if (p.size() != 2) throw ValidationError("censoring entries are pairs");
      rel.set(c.obj_index(p[0]), c.obj_index(p[1]));
    }
    c.censoring = rel;
  }
  return c;
}

// ---- bimodules ----

template <class S>
Json write_bimodule(const Bimodule<S>& m) {
  const Field<S>& k = m.acat.field;
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "bimodule";
  j["scalars"] = k.spec().name();
  j["left_category"] = write_category(m.acat);
  j["right_category"] = write_category(m.bcat);
  Json spaces = Json::array();
  for (auto& [key, s] : m.spaces) {
    Json e;
    e["over"] = Json::array({m.bcat.objects[key.first], m.acat.objects[key.second]});
    Json basis = Json::array();
    for (Index i = 0; i < s.dim(); ++i)
      basis.push_back(Json{{"label", s.labels[i]}, {"degree", s.degs[i]}});
    e["basis"] = basis;
    Json diff = Json::array();
    for (Index col = 0; col < s.dim(); ++col)
      for (Index row = 0; row < s.dim(); ++row)
        if (!is_zero(s.diff(row, col)))
          diff.push_back(Json{{"of", s.labels[col]}, {"h", s.labels[row]}, {"c", k.str(s.diff(row, col))}});
    if (!diff.empty()) e["differential"] = diff;
    spaces.push_back(e);
  }
  j["spaces"] = spaces;
  auto dump_action = [&](const std::map<std::tuple<Index, Index, Index>, StructureMap<S>>& act,
                         bool left) {
    Json out = Json::array();
    for (auto& [key, sm] : act) {
      auto [x, y, z] = key;
      const HomSpace<S>* src = left ? m.spaces.count({x, y}) ? &m.spaces.at({x, y}) : nullptr
                                    : m.spaces.count({y, z}) ? &m.spaces.at({y, z}) : nullptr;
      const HomSpace<S>* dst = left ? m.spaces.count({x, z}) ? &m.spaces.at({x, z}) : nullptr
                                    : m.spaces.count({x, z}) ? &m.spaces.at({x, z}) : nullptr;
      const HomSpace<S>* act_h = left ? m.acat.hom(y, z) : m.bcat.hom(x, y);
      if (!src || !dst || !act_h) continue;
      for (auto& [gf, terms] : sm.terms) {
        if (terms.empty()) continue;
        Json e;
        if (left) {
          e["at"] = Json::array({m.bcat.objects[x], m.acat.objects[y], m.acat.objects[z]});
          e["f"] = act_h->labels[gf.first];
          e["m"] = src->labels[gf.second];
        } else {
          e["at"] = Json::array({m.bcat.objects[x], m.bcat.objects[y], m.acat.objects[z]});
          e["m"] = src->labels[gf.first];
          e["g"] = act_h->labels[gf.second];
        }
        Json res = Json::array();
        for (auto& [h, c] : terms) res.push_back(Json{{"h", dst->labels[h]}, {"c", k.str(c)}});
        e["result"] = res;
        out.push_back(e);
      }
    }
    return out;
  };
  j["left_action"] = dump_action(m.lact, true);
  j["right_action"] = dump_action(m.ract, false);
  return j;
}

template <class S>
Bimodule<S> read_bimodule(const Json& j, const Field<S>& k) {
  if (file_kind(j) != "bimodule") throw ValidationError("expected a bimodule file");
  if (!(file_scalars(j) == k.spec())) throw ValidationError("scalar kind mismatch in bimodule file");
  Bimodule<S> m;
  m.acat = read_category(j.at("left_category"), k);
  m.bcat = read_category(j.at("right_category"), k);
  for (auto& e : j.at("spaces")) {
    auto over = e.at("over").template get<std::vector<std::string>>();
    if (over.size() != 2) throw ValidationError("bimodule 'over' needs two objects");
    Index b = m.bcat.obj_index(over[0]);
    Index a = m.acat.obj_index(over[1]);
    HomSpace<S> s;
    for (auto& be : e.at("basis")) {
      s.labels.push_back(be.at("label").template get<std::string>());
      s.degs.push_back(be.value("degree", 0));
    }
    s.diff = zero_mat<S>(s.dim(), s.dim());
    if (e.contains("differential"))
      for (auto& de : e.at("differential"))
        s.diff(s.label_index(de.at("h").template get<std::string>()),
               s.label_index(de.at("of").template get<std::string>())) =
            k.parse(de.at("c").template get<std::string>());
    if (s.dim() > 0) m.spaces[{b, a}] = std::move(s);
  }
  if (j.contains("left_action"))
    for (auto& e : j.at("left_action")) {
      auto at = e.at("at").template get<std::vector<std::string>>();
      Index b = m.bcat.obj_index(at[0]);
      Index a = m.acat.obj_index(at[1]);
      Index a2 = m.acat.obj_index(at[2]);
      const HomSpace<S>* fh = m.acat.hom(a, a2);
      const HomSpace<S>* src = m.space(b, a);
      const HomSpace<S>* dst = m.space(b, a2);
      if (!fh || !src || !dst) throw ValidationError("left action entry on a zero space");
      Index f = fh->label_index(e.at("f").template get<std::string>());
      Index mm = src->label_index(e.at("m").template get<std::string>());
      for (auto& re : e.at("result"))
        m.lact[{b, a, a2}].add(f, mm, dst->label_index(re.at("h").template get<std::string>()),
                               k.parse(re.at("c").template get<std::string>()));
    }
  if (j.contains("right_action"))
    for (auto& e : j.at("right_action")) {
      auto at = e.at("at").template get<std::vector<std::string>>();
      Index b2 = m.bcat.obj_index(at[0]);
      Index b = m.bcat.obj_index(at[1]);
      Index a = m.acat.obj_index(at[2]);
      const HomSpace<S>* gh = m.bcat.hom(b2, b);
      const HomSpace<S>* src = m.space(b, a);
      const HomSpace<S>* dst = m.space(b2, a);
      if (!gh || !src || !dst) throw ValidationError("right action entry on a zero space");
      Index mm = src->label_index(e.at("m").template get<std::string>());
      Index g = gh->label_index(e.at("g").template get<std::string>());
      for (auto& re : e.at("result"))
        m.ract[{b2, b, a}].add(mm, g, dst->label_index(re.at("h").template get<std::string>()),
                               k.parse(re.at("c").template get<std::string>()));
    }
  return m;
}

// one-object category files double as algebra references
template <class S>
Algebra<S> read_algebra(const Json& j, const Field<S>& k) {
  FinLinCat<S> c = read_category(j, k);
  if (c.n_objects() != 1) throw ValidationError("algebra reference must be a one-object category");
  require_valid(c, "algebra category");
  return endomorphism_algebra(c, 0);
}

// ---- spaces and presheaves ----

template <class S>
struct SpaceBundle {
  FiniteSpace space;
  bool has_presheaf = false;
  BasisSetup<S> basis;  // on the minimal basis
};

inline std::string dirname_of(const std::string& path) {
  auto slash = path.find_last_of('/');
  return slash == std::string::npos ? std::string(".") : path.substr(0, slash);
}

template <class S>
SpaceBundle<S> read_space(const Json& j, const Field<S>& k, const std::string& base_dir) {
  if (file_kind(j) != "space") throw ValidationError("expected a space file");
  SpaceBundle<S> out;
  auto points = j.at("points").get<std::vector<std::string>>();
  if (j.contains("opens")) {
    std::vector<std::vector<std::string>> opens;
    for (auto& o : j.at("opens")) opens.push_back(o.get<std::vector<std::string>>());
    out.space = space_from_opens(points, opens);
  } else if (j.contains("specialization")) {
    Poset p(points);
    for (auto& e : j.at("specialization")) {
      auto pr = e.get<std::vector<std::string>>();
      if (pr.size() != 2) throw ValidationError("specialization entries are pairs");
      p.set(p.index(pr[0]), p.index(pr[1]));
    }
    p.close_transitively();
    p.validate();
    out.space = space_from_specialization(p);
  } else {
    throw ValidationError("space file needs 'opens' or 'specialization'");
  }

  auto an = space_analysis(out.space);
  if (!j.contains("presheaf")) {
    out.basis = constant_sheaf_setup(k, out.space, an.minimal_basis);
    return out;
  }
  out.has_presheaf = true;
  const Json& pj = j.at("presheaf");
  std::map<std::string, Algebra<S>> algebras;
  for (auto& [name, ref] : pj.at("algebras").items()) {
    Json aj = load_json(base_dir + "/" + ref.template get<std::string>());
    algebras[name] = read_algebra(aj, k);
  }
  BasisSetup<S> b;
  b.poset = opens_poset(out.space, an.minimal_basis);
  for (Index i = 0; i < b.poset.size(); ++i)
    for (uint64_t u : an.minimal_basis)
      if (out.space.open_name(u) == b.poset.names[i]) b.opens.push_back(u);
  RingPresheaf<S> o;
  o.poset = b.poset;
  for (Index i = 0; i < b.poset.size(); ++i) {
    const std::string& name = b.poset.names[i];
    if (!pj.at("assign").contains(name))
      throw ValidationError("presheaf: no algebra assigned to basis open " + name);
    o.alg.push_back(algebras.at(pj.at("assign").at(name).template get<std::string>()));
  }
  // identity restrictions by default; explicit entries override
  for (Index u = 0; u < b.poset.size(); ++u)
    for (Index v = 0; v < b.poset.size(); ++v) {
      if (!b.poset.leq(u, v)) continue;
      if (u == v || o.alg[u].labels == o.alg[v].labels)
        o.restr[{u, v}] = identity_mat(k, o.alg[u].dim());
    }
  if (pj.contains("restrictions"))
    for (auto& re : pj.at("restrictions")) {
      Index u = b.poset.index(re.at("small").template get<std::string>());
      Index v = b.poset.index(re.at("big").template get<std::string>());
      Mat<S> r = zero_mat<S>(o.alg[u].dim(), o.alg[v].dim());
      for (auto& me : re.at("map")) {
        Index col = 0;
        for (; col < o.alg[v].dim(); ++col)
          if (o.alg[v].labels[col] == me.at("of").template get<std::string>()) break;
        if (col == o.alg[v].dim()) throw ValidationError("restriction references unknown basis label");
        for (auto& te : me.at("to")) {
          Index row = 0;
          for (; row < o.alg[u].dim(); ++row)
            if (o.alg[u].labels[row] == te.at("h").template get<std::string>()) break;
          if (row == o.alg[u].dim()) throw ValidationError("restriction references unknown basis label");
          r(row, col) = k.parse(te.at("c").template get<std::string>());
        }
      }
      o.restr[{u, v}] = r;
    }
  b.presheaf = o;
  b.cat = incidence_category(o);
  out.basis = b;
  return out;
}

// ---- cochains ----

template <class S>
Cochain<S> read_cochain(const Json& j, const HochschildComplex<S>& H) {
  if (file_kind(j) != "cochain") throw ValidationError("expected a cochain file");
  const int degree = j.at("degree").get<int>();
  Cochain<S> f = zero_cochain(H, degree);
  for (auto& e : j.at("entries")) {
    auto chain_names = e.at("chain").get<std::vector<std::string>>();
    std::vector<Index> chain;
    for (auto& n : chain_names) chain.push_back(H.cat.obj_index(n));
    auto bit = H.block_id.find(chain);
    if (bit == H.block_id.end()) throw ValidationError("cochain entry on a missing chain");
    auto& blk = H.blocks[bit->second];
    auto args = e.at("args").get<std::vector<std::string>>();
    if (static_cast<int>(args.size()) != blk.p())
      throw ValidationError("cochain entry has the wrong number of arguments");
    std::vector<Index> tensor;
    for (size_t s = 0; s < args.size(); ++s) {
      const HomSpace<S>* hs = H.cat.hom(chain[s], chain[s + 1]);
      tensor.push_back(hs->label_index(args[s]));
    }
    auto tit = blk.tensor_id.find(tensor);
    if (tit == blk.tensor_id.end()) throw ValidationError("cochain entry on a missing tensor");
    const HomSpace<S>* msp = H.coef_space(bit->second);
    for (auto& te : e.at("value")) {
      Index m = msp->label_index(te.at("h").get<std::string>());
      Index coord = H.coord(degree, bit->second, tit->second, m);
      if (coord < 0) throw ValidationError("cochain entry outside the assembled degree");
      f.coords(coord) = H.cat.field.parse(te.at("c").get<std::string>());
    }
  }
  return f;
}

// ---- reports ----

inline Json betti_report(const BettiTable& t, const ScalarSpec& sp, bool normalized) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "betti_report";
  j["scalars"] = sp.name();
  j["normalized"] = normalized;
  Json rows = Json::array();
  for (auto& r : t.rows)
    rows.push_back(Json{{"degree", r.degree}, {"dim", r.dim}, {"edge_caveat", !r.exact}});
  j["rows"] = rows;
  return j;
}

inline std::string betti_text(const BettiTable& t) {
  std::ostringstream os;
  os << "degree  dim  caveat\n";
  for (auto& r : t.rows)
    os << "  " << r.degree << "     " << r.dim << "    " << (r.exact ? "-" : "edge") << "\n";
  return os.str();
}

inline Json compare_report(const CompareReport& r, const ScalarSpec& sp) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "compare_report";
  j["scalars"] = sp.name();
  j["verdict"] = r.equal ? "equal" : "unequal";
  j["fully_exact"] = r.fully_exact;
  auto rows = [](const BettiTable& t) {
    Json out = Json::array();
    for (auto& r : t.rows)
      out.push_back(Json{{"degree", r.degree}, {"dim", r.dim}, {"edge_caveat", !r.exact}});
    return out;
  };
  j["a"] = rows(r.a);
  j["b"] = rows(r.b);
  return j;
}

template <class S>
Json mv_report_json(const MvReport<S>& r, const ScalarSpec& sp) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["kind"] = "mv_report";
  j["scalars"] = sp.name();
  j["ses_valid"] = r.ses_valid;
  j["exact"] = r.exact;
  j["determined_matches"] = r.determined_matches;
  Json rows = Json::array();
  for (size_t k = 0; k < r.degrees.size(); ++k)
    rows.push_back(Json{{"degree", r.degrees[k]},
                        {"X", r.hX[k]},
                        {"U", r.hU[k]},
                        {"V", r.hV[k]},
                        {"UV", r.hI[k]},
                        {"determined", r.determined[k]}});
  j["rows"] = rows;
  Json joints = Json::array();
  for (auto& jt : r.les.joints)
    joints.push_back(Json{{"degree", jt.degree},
                          {"at", std::string(1, jt.at)},
                          {"pass", jt.pass()}});
  j["joints"] = joints;
  return j;
}

}  // namespace hochkit
