// Command-line front end: exact Hochschild cohomology of finite linear
// categories and the finite-space machinery around it.
//
// Exit codes: 0 success, 2 validation/parse failure, 3 verification (math)
// failure, 4 resource cap exceeded.

#include <CLI11.hpp>

#include <cstdio>
#include <iostream>
#include <string>

#include "hochkit/acceptance.hpp"
#include "hochkit/io.hpp"

using namespace hochkit;

namespace {

struct CommonOpts {
  std::string scalars;  // empty = take from file
  int window = 3;
  int window_cap = 6;
  bool normalized = false;
  long long max_dim = 200000;
  std::string out;
  bool json = false;
};

void add_common(CLI::App* cmd, CommonOpts& o, bool with_window = true) {
  cmd->add_option("--scalars", o.scalars, "scalar kind: rational or fp:<p>");
  if (with_window) cmd->add_option("--window,-w", o.window, "top reported degree (default 3)");
  cmd->add_option("--max-dim", o.max_dim, "per-degree dimension cap");
  cmd->add_option("--out", o.out, "write the report to this path");
  cmd->add_flag("--json", o.json, "emit the machine-readable report on stdout");
}

void check_window(const CommonOpts& o) {
  if (o.window < 0 || o.window > o.window_cap)
    throw ValidationError("window must lie in [0, " + std::to_string(o.window_cap) + "]");
}

ScalarSpec pick_scalars(const CommonOpts& o, const Json& first_input) {
  ScalarSpec file_spec = file_scalars(first_input);
  if (o.scalars.empty()) return file_spec;
  ScalarSpec flag_spec = ScalarSpec::parse(o.scalars);
  if (!(flag_spec == file_spec))
    throw ValidationError("scalar kind mismatch: file has " + file_spec.name() + ", flag asks " +
                          flag_spec.name());
  return flag_spec;
}

void emit(const CommonOpts& o, const Json& report, const std::string& text) {
  if (o.json)
    std::cout << json_text(report);
  else
    std::cout << text;
  if (!o.out.empty()) save_text(o.out, json_text(report));
}

HochschildOptions hh_opts(const CommonOpts& o) {
  HochschildOptions h;
  h.n_max = o.window;
  h.normalized = o.normalized;
  h.max_total_dim = o.max_dim;
  return h;
}

// ---- per-command drivers, templated on the scalar ----

template <class S>
int run_validate(const Field<S>& k, const Json& j, const CommonOpts& o) {
  std::string kind = file_kind(j);
  if (kind == "category") {
    auto c = read_category(j, k);
    auto rep = validate_category(c);
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["kind"] = "validation_report";
    out["ok"] = rep.ok();
    Json items = Json::array();
    for (auto& v : rep.items) items.push_back(Json{{"code", v.code}, {"detail", v.detail}});
    out["violations"] = items;
    emit(o, out, rep.ok() ? "valid\n" : rep.str());
    return rep.ok() ? 0 : 2;
  }
  if (kind == "space") {
    auto b = read_space(j, k, ".");
    auto rep = validate_presheaf(b.basis.presheaf);
    Json out;
    out["schema_version"] = kSchemaVersion;
    out["kind"] = "validation_report";
    out["ok"] = rep.ok();
    emit(o, out, rep.ok() ? "valid\n" : rep.str());
    return rep.ok() ? 0 : 2;
  }
  throw ValidationError("validate: unsupported file kind '" + kind + "'");
}

template <class S>
int run_hh(const Field<S>& k, const Json& j, const CommonOpts& o) {
  auto c = read_category(j, k);
  require_valid(c, "input category");
  HochschildOptions ho = hh_opts(o);
  ho.n_max = std::max(ho.n_max, 1);
  auto t = betti_of(c, ho);
  t.rows.resize(o.window + 1);
  emit(o, betti_report(t, k.spec(), o.normalized), betti_text(t));
  return 0;
}

template <class S>
int run_compare(const Field<S>& k, const Json& ja, const Json* jb, bool against_opposite,
                const CommonOpts& o) {
  auto a = read_category(ja, k);
  require_valid(a, "first category");
  FinLinCat<S> b;
  if (against_opposite) {
    b = opposite(a);
  } else {
    if (!jb) throw ValidationError("compare needs a second file or --opposite");
    b = read_category(*jb, k);
    require_valid(b, "second category");
  }
  auto rep = compare_dims(a, b, hh_opts(o));
  std::string text = std::string("verdict: ") + (rep.equal ? "equal" : "unequal") + "\n" +
                     betti_text(rep.a) + betti_text(rep.b);
  emit(o, compare_report(rep, k.spec()), text);
  return rep.equal ? 0 : 3;
}

template <class S>
int run_mv(const Field<S>& k, const Json& jc, const std::string& base_dir, const CommonOpts& o) {
  if (file_kind(jc) != "cover") throw ValidationError("mv expects a cover file");
  Json js = load_json(base_dir + "/" + jc.at("space").get<std::string>());
  auto bundle = read_space(js, k, base_dir);
  auto opens = jc.at("opens");
  if (opens.size() != 2) throw ValidationError("mv needs a cover by exactly two opens");
  uint64_t U = bundle.space.open_from_names(opens[0].template get<std::vector<std::string>>());
  uint64_t V = bundle.space.open_from_names(opens[1].template get<std::vector<std::string>>());
  if (!bundle.space.is_open(U) || !bundle.space.is_open(V))
    throw ValidationError("mv: cover pieces must be open");
  auto rep = mayer_vietoris(bundle.space, bundle.basis, U, V, o.window,
                            static_cast<Index>(o.max_dim));
  std::ostringstream text;
  text << "degree  X  U  V  U∩V  determined\n";
  for (size_t i = 0; i < rep.degrees.size(); ++i)
    text << "  " << rep.degrees[i] << "     " << rep.hX[i] << "  " << rep.hU[i] << "  " << rep.hV[i]
         << "  " << rep.hI[i] << "    " << rep.determined[i] << "\n";
  text << "ses: " << (rep.ses_valid ? "exact" : "INVALID")
       << ", joints: " << (rep.exact ? "all exact" : "FAILURES")
       << ", rank chase: " << (rep.determined_matches ? "matches" : "MISMATCH") << "\n";
  emit(o, mv_report_json(rep, k.spec()), text.str());
  return (rep.ses_valid && rep.exact && rep.determined_matches) ? 0 : 3;
}

template <class S>
int run_gs_compare(const Field<S>& k, const Json& js, const std::string& base_dir,
                   const CommonOpts& o) {
  auto bundle = read_space(js, k, base_dir);
  auto gs = gs_cohomology(bundle.basis.presheaf, o.window, static_cast<Index>(o.max_dim));
  HochschildOptions ho = hh_opts(o);
  auto inc = hochschild_cohomology(bundle.basis.cat, ho);
  auto alg = hochschild_cohomology(from_algebra(category_algebra(bundle.basis.cat), "o"), ho);
  bool equal = true;
  Json rows = Json::array();
  std::ostringstream text;
  text << "degree  gs  incidence  algebra\n";
  for (int n = 0; n <= o.window; ++n) {
    equal = equal && gs[n] == inc.table[n].dim && inc.table[n].dim == alg.table[n].dim;
    rows.push_back(Json{{"degree", n},
                        {"gs", gs[n]},
                        {"incidence", inc.table[n].dim},
                        {"algebra", alg.table[n].dim}});
    text << "  " << n << "      " << gs[n] << "   " << inc.table[n].dim << "          "
         << alg.table[n].dim << "\n";
  }
  text << "verdict: " << (equal ? "equal" : "unequal") << "\n";
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["kind"] = "gs_compare_report";
  out["scalars"] = k.spec().name();
  out["verdict"] = equal ? "equal" : "unequal";
  out["rows"] = rows;
  emit(o, out, text.str());
  return equal ? 0 : 3;
}

template <class S>
int run_deform(const Field<S>& k, const Json& jc, const std::string& cochain_path, bool enumerate,
               const CommonOpts& o) {
  auto c = read_category(jc, k);
  require_valid(c, "input category");
  if (!c.is_ordinary()) throw ValidationError("deform needs an ordinary category");
  HochschildOptions ho = hh_opts(o);
  ho.n_max = std::max(ho.n_max, 3);
  auto H = hochschild_complex(c, diagonal_bimodule(c), ho);

  auto verdicts = [&](const Cochain<S>& phi) {
    Json v;
    FirstOrderDeformation<S> d{&H, phi};
    auto first = first_order_check(d);
    v["first_order_associative"] = first.associative;
    if (!first.associative && first.witness) {
      v["defect_witness"] = Json::array(
          {first.witness->triple[0], first.witness->triple[1], first.witness->triple[2]});
      return v;
    }
    if (first.associative) {
      auto ob = obstruction_square(d);
      v["square_is_cocycle"] = ob.square_is_cocycle;
      v["unobstructed"] = ob.unobstructed;
    }
    return v;
  };

  Json out;
  out["schema_version"] = kSchemaVersion;
  out["kind"] = "deform_report";
  out["scalars"] = k.spec().name();
  std::ostringstream text;
  if (enumerate) {
    auto h2 = cohomology(H.cx, 2);
    Json list = Json::array();
    for (Index j2 = 0; j2 < h2.reps.cols(); ++j2) {
      Cochain<S> phi{2, Vec<S>(h2.reps.col(j2))};
      Json v = verdicts(phi);
      v["class"] = static_cast<long long>(j2);
      list.push_back(v);
      text << "class " << j2 << ": first-order ok, "
           << (v.value("unobstructed", false) ? "unobstructed" : "obstructed") << "\n";
    }
    out["classes"] = list;
    if (h2.reps.cols() == 0) text << "HH² = 0: only the trivial first-order deformation\n";
  } else {
    Json cj = load_json(cochain_path);
    Cochain<S> phi = read_cochain(cj, H);
    if (phi.degree != 2) throw ValidationError("deform expects a 2-cochain");
    Json v = verdicts(phi);
    out["cochain"] = v;
    text << "first-order: " << (v["first_order_associative"].template get<bool>() ? "associative (cocycle)" : "defect found")
         << "\n";
    if (v.contains("unobstructed"))
      text << "obstruction: " << (v["unobstructed"].template get<bool>() ? "unobstructed" : "obstructed") << "\n";
  }
  emit(o, out, text.str());
  return 0;
}

int run_suite(const CommonOpts& o) {
  auto results = hochkit::acceptance::run_all();
  bool all = true;
  Json rows = Json::array();
  std::ostringstream text;
  for (auto& r : results) {
    text << (r.pass ? "[PASS] " : "[FAIL] ") << r.id << " " << r.name << " (" << r.detail << ")\n";
    rows.push_back(Json{{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
    all = all && r.pass;
  }
  text << (all ? "all criteria passed\n" : "FAILURES present\n");
  Json out;
  out["schema_version"] = kSchemaVersion;
  out["kind"] = "suite_report";
  out["pass"] = all;
  out["criteria"] = rows;
  emit(o, out, text.str());
  return all ? 0 : 3;
}

template <class F>
int dispatch(const ScalarSpec& sp, F&& body) {
  if (sp.rational) {
    Field<Rational> k;
    return body(k);
  }
  Field<Fp> k(sp);
  return body(k);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact Hochschild cohomology of finite linear categories"};
  app.require_subcommand(1);

  CommonOpts o;
  std::string file_a, file_b, cochain_path;
  bool against_opposite = false, enumerate = false;

  auto* validate = app.add_subcommand("validate", "check a category or space file");
  validate->add_option("file", file_a)->required();
  add_common(validate, o, false);

  auto* hh = app.add_subcommand("hh", "Betti table of the Hochschild cohomology");
  hh->add_option("file", file_a)->required();
  hh->add_flag("--normalized", o.normalized, "use the normalized complex");
  add_common(hh, o);

  auto* compare = app.add_subcommand("compare", "compare the HH dims of two categories");
  compare->add_option("file", file_a)->required();
  compare->add_option("other", file_b);
  compare->add_flag("--opposite", against_opposite, "compare against the opposite category");
  add_common(compare, o);

  auto* mv = app.add_subcommand("mv", "Mayer–Vietoris long exact sequence of a two-piece cover");
  mv->add_option("cover", file_a)->required();
  add_common(mv, o);

  auto* gs = app.add_subcommand("gs-compare", "diagram bicomplex vs incidence category vs algebra");
  gs->add_option("space", file_a)->required();
  add_common(gs, o);

  auto* deform = app.add_subcommand("deform", "first-order deformation and obstruction verdicts");
  deform->add_option("file", file_a)->required();
  deform->add_option("--cochain", cochain_path, "2-cochain file");
  deform->add_flag("--enumerate", enumerate, "use a basis of HH² classes");
  add_common(deform, o);

  auto* suite = app.add_subcommand("suite", "run the bundled verification suite");
  add_common(suite, o, false);

  CLI11_PARSE(app, argc, argv);

  try {
    check_window(o);
    if (suite->parsed()) return run_suite(o);
    Json ja = load_json(file_a);
    const std::string base_dir = dirname_of(file_a);
    if (validate->parsed()) {
      // space files may carry algebra references with their own scalars
      ScalarSpec sp = o.scalars.empty() ? file_scalars(ja) : ScalarSpec::parse(o.scalars);
      if (file_kind(ja) == "category") sp = pick_scalars(o, ja);
      return dispatch(sp, [&](auto& k) { return run_validate(k, ja, o); });
    }
    if (hh->parsed())
      return dispatch(pick_scalars(o, ja), [&](auto& k) { return run_hh(k, ja, o); });
    if (compare->parsed()) {
      ScalarSpec sp = pick_scalars(o, ja);
      Json jb;
      bool has_b = !file_b.empty();
      if (has_b) {
        jb = load_json(file_b);
        if (!(file_scalars(jb) == sp))
          throw ValidationError("scalar kind mismatch across files");
      }
      return dispatch(sp, [&](auto& k) {
        return run_compare(k, ja, has_b ? &jb : nullptr, against_opposite, o);
      });
    }
    if (mv->parsed()) {
      ScalarSpec sp = o.scalars.empty() ? ScalarSpec{} : ScalarSpec::parse(o.scalars);
      return dispatch(sp, [&](auto& k) { return run_mv(k, ja, base_dir, o); });
    }
    if (gs->parsed()) {
      ScalarSpec sp = o.scalars.empty() ? ScalarSpec{} : ScalarSpec::parse(o.scalars);
      return dispatch(sp, [&](auto& k) { return run_gs_compare(k, ja, base_dir, o); });
    }
    if (deform->parsed()) {
      if (cochain_path.empty() && !enumerate)
        throw ValidationError("deform needs --cochain FILE or --enumerate");
      return dispatch(pick_scalars(o, ja),
                      [&](auto& k) { return run_deform(k, ja, cochain_path, enumerate, o); });
    }
  } catch (const ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return 4;
  } catch (const VerificationError& e) {
    std::cerr << "verification failure: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
