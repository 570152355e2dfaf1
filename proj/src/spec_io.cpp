#include "gifsdim/spec_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <vector>

namespace gifs {

namespace {

struct Cursor {
  std::string_view text;
  std::string name;
  int line = 0;

  [[noreturn]] void fail(const std::string& what) const {
    throw Error(Error::Kind::input,
                name + ":" + std::to_string(line) + ": " + what);
  }
};

std::vector<std::string_view> split_ws(std::string_view s) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < s.size()) {
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < s.size() && s[j] != ' ' && s[j] != '\t') ++j;
    if (j > i) out.push_back(s.substr(i, j - i));
    i = j;
  }
  return out;
}

double parse_number(const Cursor& cur, std::string_view field, std::string_view s) {
  double value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    cur.fail("malformed number '" + std::string(s) + "' in field " + std::string(field));
  return value;
}

long parse_int(const Cursor& cur, std::string_view field, std::string_view s) {
  long value = 0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size())
    cur.fail("malformed integer '" + std::string(s) + "' in field " + std::string(field));
  return value;
}

// key=value token, e.g. "dim=3" or "M=1,0,0,1".
std::string_view expect_kv(const Cursor& cur, std::string_view token, std::string_view key) {
  const std::size_t eq = token.find('=');
  if (eq == std::string_view::npos || token.substr(0, eq) != key)
    cur.fail("expected " + std::string(key) + "=..., got '" + std::string(token) + "'");
  return token.substr(eq + 1);
}

std::vector<double> parse_list(const Cursor& cur, std::string_view field,
                               std::string_view s, std::size_t expected) {
  std::vector<double> out;
  std::size_t i = 0;
  while (i <= s.size()) {
    std::size_t j = s.find(',', i);
    if (j == std::string_view::npos) j = s.size();
    out.push_back(parse_number(cur, field, s.substr(i, j - i)));
    i = j + 1;
    if (j == s.size()) break;
  }
  if (out.size() != expected)
    cur.fail("field " + std::string(field) + " needs " + std::to_string(expected) +
             " numbers, got " + std::to_string(out.size()));
  return out;
}

Box parse_box(const Cursor& cur, std::string_view field, std::string_view s, int dim) {
  const std::size_t bar = s.find('|');
  if (bar == std::string_view::npos)
    cur.fail("field " + std::string(field) + " needs low...|high...");
  const auto lo = parse_list(cur, field, s.substr(0, bar), static_cast<std::size_t>(dim));
  const auto hi = parse_list(cur, field, s.substr(bar + 1), static_cast<std::size_t>(dim));
  Box b{Vec(dim), Vec(dim)};
  for (int i = 0; i < dim; ++i) {
    b.low[i] = lo[static_cast<std::size_t>(i)];
    b.high[i] = hi[static_cast<std::size_t>(i)];
  }
  if (!b.valid()) cur.fail("field " + std::string(field) + " needs low < high componentwise");
  return b;
}

}  // namespace

SpecFile parse_spec(std::string_view text, std::string name) {
  Cursor cur{text, name, 0};
  PerturbedFamily fam;
  AffineSystem& sys = fam.base;

  bool have_header = false;
  std::vector<std::vector<bool>> have_map;  // [edge][k]

  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    if (eol == std::string_view::npos) eol = text.size();
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++cur.line;

    const std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    const auto tok = split_ws(line);
    if (tok.empty()) {
      if (eol == text.size()) break;
      continue;
    }

    if (!have_header) {
      if (tok[0] != "gifs") cur.fail("file must start with a 'gifs <version> dim=<D>' header");
      if (tok.size() < 3) cur.fail("header needs 'gifs <version> dim=<D> [order=<n>]'");
      if (tok[1] != "1") cur.fail("unsupported format version '" + std::string(tok[1]) + "'");
      const long dim = parse_int(cur, "dim", expect_kv(cur, tok[2], "dim"));
      if (dim < 1 || dim > kMaxDim)
        cur.fail("dim must be in [1, " + std::to_string(kMaxDim) + "]");
      sys.dim = static_cast<int>(dim);
      if (tok.size() > 3) {
        const long order = parse_int(cur, "order", expect_kv(cur, tok[3], "order"));
        if (order < 0 || order > kMaxDim) cur.fail("order must be in [0, 8]");
        fam.order = static_cast<int>(order);
      }
      have_header = true;
      continue;
    }

    if (tok[0] == "vertex") {
      if (tok.size() != 4) cur.fail("vertex line needs: vertex <name> J=... O=...");
      const Box j = parse_box(cur, "J", expect_kv(cur, tok[2], "J"), sys.dim);
      const Box o = parse_box(cur, "O", expect_kv(cur, tok[3], "O"), sys.dim);
      try {
        sys.graph.add_vertex(std::string(tok[1]));
      } catch (const Error& err) {
        cur.fail(err.what());
      }
      sys.seed.push_back(j);
      sys.domain.push_back(o);
    } else if (tok[0] == "edge") {
      if (tok.size() != 4) cur.fail("edge line needs: edge <name> <from> <to>");
      const auto from = sys.graph.find_vertex(tok[2]);
      if (!from) cur.fail("unknown vertex '" + std::string(tok[2]) + "'");
      const auto to = sys.graph.find_vertex(tok[3]);
      if (!to) cur.fail("unknown vertex '" + std::string(tok[3]) + "'");
      try {
        sys.graph.add_edge(std::string(tok[1]), *from, *to);
      } catch (const Error& err) {
        cur.fail(err.what());
      }
      sys.maps.push_back(AffineMap{Matrix(sys.dim), Vec(sys.dim)});
      fam.coeffs.emplace_back(
          static_cast<std::size_t>(fam.order),
          AffineMap{Matrix(sys.dim), Vec(sys.dim)});
      have_map.emplace_back(static_cast<std::size_t>(fam.order) + 1, false);
    } else if (tok[0] == "map") {
      if (tok.size() != 5) cur.fail("map line needs: map <edge> k=<n> M=... a=...");
      const auto edge = sys.graph.find_edge(tok[1]);
      if (!edge) cur.fail("unknown edge '" + std::string(tok[1]) + "'");
      const long k = parse_int(cur, "k", expect_kv(cur, tok[2], "k"));
      if (k < 0 || k > fam.order)
        cur.fail("k must be in [0, " + std::to_string(fam.order) + "]");
      const auto entries = parse_list(cur, "M", expect_kv(cur, tok[3], "M"),
                                      static_cast<std::size_t>(sys.dim) *
                                          static_cast<std::size_t>(sys.dim));
      const auto offs = parse_list(cur, "a", expect_kv(cur, tok[4], "a"),
                                   static_cast<std::size_t>(sys.dim));
      AffineMap m{Matrix(sys.dim), Vec(sys.dim)};
      for (int r = 0; r < sys.dim; ++r)
        for (int c = 0; c < sys.dim; ++c)
          m.linear.at(r, c) = entries[static_cast<std::size_t>(r * sys.dim + c)];
      for (int i = 0; i < sys.dim; ++i) m.offset[i] = offs[static_cast<std::size_t>(i)];
      auto& seen = have_map[static_cast<std::size_t>(*edge)];
      if (seen[static_cast<std::size_t>(k)])
        cur.fail("duplicate map for edge '" + std::string(tok[1]) + "' at k=" +
                 std::to_string(k));
      seen[static_cast<std::size_t>(k)] = true;
      if (k == 0)
        sys.maps[static_cast<std::size_t>(*edge)] = m;
      else
        fam.coeffs[static_cast<std::size_t>(*edge)][static_cast<std::size_t>(k - 1)] = m;
    } else if (tok[0] == "tail") {
      if (tok.size() != 4) cur.fail("tail line needs: tail <geometric|polynomial> <scale> <rate>");
      TailRule rule;
      if (tok[1] == "geometric")
        rule.kind = TailRule::Kind::geometric;
      else if (tok[1] == "polynomial")
        rule.kind = TailRule::Kind::polynomial;
      else
        cur.fail("tail rule must be geometric or polynomial");
      rule.scale = parse_number(cur, "scale", tok[2]);
      rule.rate = parse_number(cur, "rate", tok[3]);
      if (rule.scale < 0 || rule.scale >= 1)
        cur.fail("tail scale must satisfy 0 <= scale < 1 (tail norms are contractions)");
      if (rule.scale > 0) {
        if (rule.kind == TailRule::Kind::geometric && !(rule.rate > 0 && rule.rate < 1))
          cur.fail("geometric tail rate must lie in (0, 1)");
        if (rule.kind == TailRule::Kind::polynomial && !(rule.rate > 0))
          cur.fail("polynomial tail rate must be positive");
      }
      if (fam.tail) cur.fail("duplicate tail line");
      fam.tail = rule;
    } else {
      cur.fail("unknown directive '" + std::string(tok[0]) + "'");
    }
    if (eol == text.size()) break;
  }

  if (!have_header) cur.fail("missing 'gifs' header");
  if (sys.graph.edge_count() == 0) cur.fail("spec declares no edges");
  for (int e = 0; e < sys.graph.edge_count(); ++e)
    if (!have_map[static_cast<std::size_t>(e)][0])
      cur.fail("missing base map (k=0) for edge '" + sys.graph.edge_name(e) + "'");
  if (fam.tail && sys.graph.vertex_count() != 1)
    cur.fail("tail rules require a single-vertex system");

  // Hard structural conditions must hold for the base system.
  const ValidationReport rep = validate(sys, 1);
  if (!rep.hard_pass()) {
    std::ostringstream msg;
    msg << name << ": validation failed:";
    for (const auto& f : rep.failures) msg << "\n  " << f;
    throw Error(Error::Kind::domain, msg.str());
  }

  fam.compute_validity();
  return SpecFile{std::move(fam), std::move(name)};
}

SpecFile load_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Error::Kind::input, "cannot open spec file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string base = path;
  const std::size_t slash = base.find_last_of('/');
  if (slash != std::string::npos) base = base.substr(slash + 1);
  return parse_spec(buf.str(), base);
}

}  // namespace gifs
