#include "hermiquad/spec_io.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <json.hpp>

namespace hermiquad {
namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw SpecParseError(msg); }

double as_finite_double(const json& v, const std::string& ctx) {
  if (!v.is_number()) fail(ctx + ": expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) fail(ctx + ": number outside double range");
  return d;
}

int as_nonneg_int(const json& v, const std::string& ctx) {
  if (!v.is_number_integer()) fail(ctx + ": expected an integer");
  const long long i = v.get<long long>();
  if (i < 0) fail(ctx + ": index must be non-negative");
  if (i > 1000000) fail(ctx + ": index implausibly large");
  return static_cast<int>(i);
}

// Tracks which keys a parser consumed so leftovers can be rejected.
class FieldReader {
 public:
  FieldReader(const json& obj, std::string ctx)
      : obj_(obj), ctx_(std::move(ctx)) {
    consumed_.insert("id");
    consumed_.insert("kind");
  }

  void number(const char* name, double& out) {
    auto it = obj_.find(name);
    if (it == obj_.end()) return;
    out = as_finite_double(*it, ctx_ + "." + name);
    consumed_.insert(name);
  }

  void index(const char* name, int& out) {
    auto it = obj_.find(name);
    if (it == obj_.end()) return;
    out = as_nonneg_int(*it, ctx_ + "." + name);
    consumed_.insert(name);
  }

  void mark(const char* name) { consumed_.insert(name); }

  void reject_unknown() const {
    for (auto it = obj_.begin(); it != obj_.end(); ++it)
      if (consumed_.find(it.key()) == consumed_.end())
        fail(ctx_ + ": unknown field \"" + it.key() + "\"");
  }

 private:
  const json& obj_;
  std::string ctx_;
  std::set<std::string> consumed_;
};

GaussIntegralSpec parse_gauss(const json& e, GaussKind kind,
                              const std::string& ctx) {
  GaussIntegralSpec s;
  s.kind = kind;
  FieldReader r(e, ctx);
  r.number("a", s.a);
  r.number("b", s.b);
  r.number("c", s.c);
  r.number("d", s.d);
  r.number("f", s.f);
  r.number("alpha", s.alpha);
  r.number("y", s.y);
  r.number("z", s.z);
  r.index("m", s.m);
  r.index("n", s.n);
  r.index("p", s.p);
  r.reject_unknown();
  return s;
}

RationalIntegralSpec parse_rational(const json& e, const std::string& ctx) {
  RationalIntegralSpec s;
  FieldReader r(e, ctx);
  r.number("a", s.a);
  r.number("b", s.b);
  r.number("c", s.c);
  r.number("nu", s.nu);
  r.index("n", s.n);
  r.reject_unknown();
  return s;
}

PolyQuery parse_poly(const json& e, const std::string& ctx) {
  auto fam = e.find("family");
  if (fam == e.end() || !fam->is_string())
    fail(ctx + ": poly entries need a string \"family\" (h2, hmn or hnu)");
  const std::string name = fam->get<std::string>();

  PolyQuery q;
  FieldReader r(e, ctx);
  r.mark("family");
  if (name == "h2") {
    q.family = PolyFamily::TwoVariable;
    r.index("n", q.n);
    r.number("x", q.x);
    r.number("y", q.y);
  } else if (name == "hmn") {
    q.family = PolyFamily::TwoIndex;
    r.index("m", q.m);
    r.index("n", q.n);
    r.number("x", q.x);
    r.number("y", q.y);
    r.number("w", q.w);
    r.number("z", q.z);
    r.number("tau", q.tau);
  } else if (name == "hnu") {
    q.family = PolyFamily::GammaWeighted;
    r.index("n", q.n);
    r.number("nu", q.nu);
    r.number("x", q.x);
    r.number("y", q.y);
  } else {
    fail(ctx + ": unknown poly family \"" + name + "\"");
  }
  r.reject_unknown();
  return q;
}

SpecEntry parse_entry(const json& e, std::size_t pos) {
  const std::string ctx = "entries[" + std::to_string(pos) + "]";
  if (!e.is_object()) fail(ctx + ": expected an object");

  auto idit = e.find("id");
  if (idit == e.end() || !idit->is_string() ||
      idit->get<std::string>().empty())
    fail(ctx + ": every entry needs a non-empty string \"id\"");
  SpecEntry entry;
  entry.id = idit->get<std::string>();

  auto kindit = e.find("kind");
  if (kindit == e.end() || !kindit->is_string())
    fail(ctx + ": every entry needs a string \"kind\"");
  const std::string kind = kindit->get<std::string>();

  if (kind == "In")
    entry.payload = parse_gauss(e, GaussKind::In, ctx);
  else if (kind == "mIn")
    entry.payload = parse_gauss(e, GaussKind::mIn, ctx);
  else if (kind == "Imn")
    entry.payload = parse_gauss(e, GaussKind::Imn, ctx);
  else if (kind == "ScriptImn")
    entry.payload = parse_gauss(e, GaussKind::ScriptImn, ctx);
  else if (kind == "pImn")
    entry.payload = parse_gauss(e, GaussKind::pImn, ctx);
  else if (kind == "rational")
    entry.payload = parse_rational(e, ctx);
  else if (kind == "poly")
    entry.payload = parse_poly(e, ctx);
  else
    fail(ctx + ": unknown kind \"" + kind + "\"");
  return entry;
}

}  // namespace

SpecFile parse_spec_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& pe) {
    fail(std::string("not valid JSON: ") + pe.what());
  }
  if (!doc.is_object()) fail("top level must be a JSON object");
  for (auto it = doc.begin(); it != doc.end(); ++it)
    if (it.key() != "schema_version" && it.key() != "entries")
      fail("unknown top-level field \"" + it.key() + "\"");

  auto ver = doc.find("schema_version");
  if (ver == doc.end() || !ver->is_number_integer())
    fail("missing integer \"schema_version\"");
  SpecFile f;
  f.schema_version = ver->get<int>();
  if (f.schema_version != 1)
    fail("unsupported schema_version " + std::to_string(f.schema_version) +
         " (expected 1)");

  auto entries = doc.find("entries");
  if (entries == doc.end() || !entries->is_array())
    fail("missing \"entries\" array");

  std::set<std::string> seen;
  for (std::size_t i = 0; i < entries->size(); ++i) {
    SpecEntry e = parse_entry((*entries)[i], i);
    if (!seen.insert(e.id).second) fail("duplicate entry id \"" + e.id + "\"");
    f.entries.push_back(std::move(e));
  }
  return f;
}

SpecFile load_spec_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot open spec file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_spec_json(ss.str());
}

const char* gauss_kind_name(GaussKind k) noexcept {
  switch (k) {
    case GaussKind::In: return "In";
    case GaussKind::mIn: return "mIn";
    case GaussKind::Imn: return "Imn";
    case GaussKind::ScriptImn: return "ScriptImn";
    case GaussKind::pImn: return "pImn";
  }
  return "unknown";
}

const char* poly_family_name(PolyFamily f) noexcept {
  switch (f) {
    case PolyFamily::TwoVariable: return "h2";
    case PolyFamily::TwoIndex: return "hmn";
    case PolyFamily::GammaWeighted: return "hnu";
  }
  return "unknown";
}

void write_gauss_payload(detail::JsonWriter& w, const GaussIntegralSpec& s) {
  w.kv("kind", gauss_kind_name(s.kind));
  if (s.kind == GaussKind::pImn) w.kv("p", s.p);
  if (s.kind != GaussKind::In) w.kv("m", s.m);
  w.kv("n", s.n);
  w.kv("a", s.a);
  w.kv("b", s.b);
  const bool two_args = s.kind == GaussKind::Imn ||
                        s.kind == GaussKind::ScriptImn ||
                        s.kind == GaussKind::pImn;
  if (two_args) {
    w.kv("c", s.c);
    w.kv("d", s.d);
  }
  w.kv("f", s.f);
  w.kv("alpha", s.alpha);
  if (s.kind != GaussKind::ScriptImn) {
    w.kv("y", s.y);
    if (two_args) w.kv("z", s.z);
  }
}

void write_rational_payload(detail::JsonWriter& w,
                            const RationalIntegralSpec& s) {
  w.kv("kind", "rational");
  w.kv("n", s.n);
  w.kv("nu", s.nu);
  w.kv("a", s.a);
  w.kv("b", s.b);
  w.kv("c", s.c);
}

void write_poly_payload(detail::JsonWriter& w, const PolyQuery& q) {
  w.kv("kind", "poly");
  w.kv("family", poly_family_name(q.family));
  switch (q.family) {
    case PolyFamily::TwoVariable:
      w.kv("n", q.n);
      w.kv("x", q.x);
      w.kv("y", q.y);
      break;
    case PolyFamily::TwoIndex:
      w.kv("m", q.m);
      w.kv("n", q.n);
      w.kv("x", q.x);
      w.kv("y", q.y);
      w.kv("w", q.w);
      w.kv("z", q.z);
      w.kv("tau", q.tau);
      break;
    case PolyFamily::GammaWeighted:
      w.kv("n", q.n);
      w.kv("nu", q.nu);
      w.kv("x", q.x);
      w.kv("y", q.y);
      break;
  }
}

void write_entry_payload(detail::JsonWriter& w, const SpecEntry& e) {
  std::visit([&](const auto& payload) {
    using T = std::decay_t<decltype(payload)>;
    if constexpr (std::is_same_v<T, GaussIntegralSpec>)
      write_gauss_payload(w, payload);
    else if constexpr (std::is_same_v<T, RationalIntegralSpec>)
      write_rational_payload(w, payload);
    else
      write_poly_payload(w, payload);
  }, e.payload);
}

}  // namespace hermiquad
