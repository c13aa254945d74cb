#include "optdesign/run_config.hpp"

#include <cstdlib>
#include <set>

#include "json.hpp"
#include "optdesign/errors.hpp"

namespace optdesign::cli {

namespace {

using nlohmann::json;

template <class T>
void read(const json& doc, const char* key, T& target) {
  if (doc.contains(key)) target = doc.at(key).get<T>();
}

template <class T>
void read(const json& doc, const char* key, std::optional<T>& target) {
  if (!doc.contains(key)) return;
  if (doc.at(key).is_null()) {
    target.reset();
  } else {
    target = doc.at(key).get<T>();
  }
}

template <class T>
json opt(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

std::string canonical_model(const std::string& name) {
  if (name == "slr") return "slr";
  if (name == "mm" || name == "michaelis_menten") return "michaelis_menten";
  throw InvalidArgument("unknown model '" + name + "' (expected slr or mm)");
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("OPTDESIGN_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0') return v;
  }
  return 42;
}

std::string to_json(const RunConfig& c) {
  json doc = {
      {"model", c.model},       {"a", opt(c.a)},
      {"b", opt(c.b)},          {"V", c.V},
      {"K", c.K},               {"eps", c.eps},
      {"absolute_eps", c.absolute_eps},
      {"criterion", c.criterion},
      {"c", opt(c.c)},          {"lambda", opt(c.lambda)},
      {"seed", c.seed},         {"out", c.out},
      {"grid", c.grid},         {"n_support", c.n_support},
      {"compat", c.compat},     {"a_list", c.a_list},
      {"eps_list", c.eps_list}, {"n", c.n},
      {"law", c.law},           {"mode", c.mode},
      {"a_fixed", opt(c.a_fixed)},
      {"lambdas", c.lambdas},   {"points", c.points},
      {"designs", c.designs},
  };
  return doc.dump(2);
}

void merge_json(RunConfig& c, const std::string& text) {
  static const std::set<std::string> known{
      "model", "a",   "b",      "V",         "K",       "eps",   "absolute_eps", "criterion",
      "c",     "lambda", "seed", "out",      "grid",    "n_support", "compat",  "a_list",
      "eps_list", "n", "law",   "mode",      "a_fixed", "lambdas", "points",   "designs"};
  try {
    const json doc = json::parse(text);
    if (!doc.is_object()) throw InvalidArgument("config: top level must be an object");
    for (const auto& item : doc.items()) {
      if (!known.count(item.key())) throw InvalidArgument("config: unknown key '" + item.key() + "'");
    }
    read(doc, "model", c.model);
    c.model = canonical_model(c.model);
    read(doc, "a", c.a);
    read(doc, "b", c.b);
    read(doc, "V", c.V);
    read(doc, "K", c.K);
    read(doc, "eps", c.eps);
    read(doc, "absolute_eps", c.absolute_eps);
    read(doc, "criterion", c.criterion);
    read(doc, "c", c.c);
    read(doc, "lambda", c.lambda);
    read(doc, "seed", c.seed);
    read(doc, "out", c.out);
    read(doc, "grid", c.grid);
    read(doc, "n_support", c.n_support);
    read(doc, "compat", c.compat);
    read(doc, "a_list", c.a_list);
    read(doc, "eps_list", c.eps_list);
    read(doc, "n", c.n);
    read(doc, "law", c.law);
    read(doc, "mode", c.mode);
    read(doc, "a_fixed", c.a_fixed);
    read(doc, "lambdas", c.lambdas);
    read(doc, "points", c.points);
    read(doc, "designs", c.designs);
  } catch (const json::exception& e) {
    throw InvalidArgument(std::string("config: ") + e.what());
  }
}

RunConfig from_json(const std::string& text) {
  RunConfig c;
  merge_json(c, text);
  return c;
}

MMParams mm_params(const RunConfig& c) {
  MMParams p;
  p.V = c.V;
  p.K = c.K;
  p.b = c.b.value_or(5.0);
  p.eps = c.eps;
  p.eps_absolute = c.absolute_eps;
  p.validate();
  return p;
}

Model build_model(const RunConfig& c) {
  if (canonical_model(c.model) == "michaelis_menten") return mm_model(mm_params(c));
  if (!c.a || !c.b) throw InvalidArgument("model slr requires --a and --b");
  if (!(*c.a < *c.b)) throw InvalidArgument("model slr requires a < b");
  return slr_model(DesignSpace(*c.a, *c.b));
}

}  // namespace optdesign::cli
