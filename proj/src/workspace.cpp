#include "homolocal/workspace.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <set>
#include <sstream>

#include "homolocal/error.hpp"
#include "homolocal/koszul.hpp"
#include "homolocal/report.hpp"

namespace homolocal {

bool RingDef::operator==(const RingDef& o) const {
  if (vars.size() != o.vars.size()) return false;
  for (std::size_t i = 0; i < vars.size(); ++i)
    if (vars[i].name != o.vars[i].name || vars[i].degree != o.vars[i].degree) return false;
  return name == o.name && p == o.p && relations == o.relations && truncate == o.truncate;
}
bool ModuleDef::operator==(const ModuleDef& o) const {
  return name == o.name && ring == o.ring && gens == o.gens && relations == o.relations;
}
bool HomDef::operator==(const HomDef& o) const {
  return name == o.name && source == o.source && target == o.target && images == o.images &&
         scale == o.scale && frobenius == o.frobenius;
}
bool ComplexDef::operator==(const ComplexDef& o) const {
  return name == o.name && ring == o.ring && module == o.module && koszul == o.koszul;
}
bool TaskDef::operator==(const TaskDef& o) const {
  return kind == o.kind && name == o.name && params == o.params;
}
bool Workspace::operator==(const Workspace& o) const {
  return defaults == o.defaults && rings == o.rings && modules == o.modules && homs == o.homs &&
         complexes == o.complexes && tasks == o.tasks;
}

const Value* TaskDef::param(const std::string& key) const {
  for (const auto& [k, v] : params)
    if (k == key) return &v;
  return nullptr;
}

namespace {

std::string at(Location l) { return std::to_string(l.line) + ":" + std::to_string(l.column) + ": "; }

[[noreturn]] void parse_error(Location l, const std::string& msg) {
  fail(ErrorKind::ParseError, at(l) + msg);
}

struct Token {
  enum class Kind { Ident, Int, String, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  std::int64_t value = 0;
  Location loc;
};

class Lexer {
 public:
  explicit Lexer(const std::string& text) : text_(text) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip();
      Token t;
      t.loc = {line_, col_};
      if (pos_ >= text_.size()) {
        out.push_back(t);
        return out;
      }
      char c = text_[pos_];
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        t.kind = Token::Kind::Ident;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '_' || text_[pos_] == '-'))
          t.text += advance();
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '-') {
        t.kind = Token::Kind::Int;
        t.text += advance();
        while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
          t.text += advance();
        if (t.text == "-") parse_error(t.loc, "expected a digit after '-'");
        try {
          t.value = std::stoll(t.text);
        } catch (const std::out_of_range&) {
          parse_error(t.loc, "integer out of range");
        }
      } else if (c == '"') {
        t.kind = Token::Kind::String;
        advance();
        while (true) {
          if (pos_ >= text_.size() || text_[pos_] == '\n') parse_error(t.loc, "unterminated string");
          char d = advance();
          if (d == '"') break;
          if (d == '\\') {
            if (pos_ >= text_.size()) parse_error(t.loc, "unterminated string");
            d = advance();
          }
          t.text += d;
        }
      } else if (std::string("{}[]=,:").find(c) != std::string::npos) {
        t.kind = Token::Kind::Punct;
        t.text = std::string(1, advance());
      } else {
        parse_error(t.loc, std::string("unexpected character '") + c + "'");
      }
      out.push_back(t);
    }
  }

 private:
  char advance() {
    char c = text_[pos_++];
    if (c == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return c;
  }
  void skip() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '#') {
        while (pos_ < text_.size() && text_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        advance();
      } else {
        break;
      }
    }
  }

  const std::string& text_;
  std::size_t pos_ = 0;
  int line_ = 1;
  int col_ = 1;
};

struct Field {
  std::string key;
  Location key_loc;
  Value value;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  Workspace run() {
    Workspace w;
    bool seen_defaults = false;
    while (peek().kind != Token::Kind::End) {
      Token kw = ident("a block keyword");
      if (kw.text == "defaults") {
        if (seen_defaults) parse_error(kw.loc, "duplicate defaults block");
        seen_defaults = true;
        for (auto& f : fields()) {
          int v = static_cast<int>(integer(f));
          if (f.key == "nmax") w.defaults.nmax = v;
          else if (f.key == "D") w.defaults.D = v;
          else if (f.key == "window") w.defaults.window = v;
          else unknown_key(f);
        }
      } else if (kw.text == "ring") {
        RingDef r;
        r.loc = kw.loc;
        r.name = ident("a ring name").text;
        for (auto& f : fields()) {
          if (f.key == "char") {
            r.p = static_cast<std::uint64_t>(integer(f));
          } else if (f.key == "vars") {
            for (const auto& v : list(f)) {
              if (v.type == Value::Type::Pair) r.vars.push_back({v.s, static_cast<int>(v.i)});
              else if (v.type == Value::Type::Ident) r.vars.push_back({v.s, 1});
              else parse_error(v.loc, "expected name:degree");
            }
          } else if (f.key == "relations") {
            r.relations = strings(f);
          } else if (f.key == "truncate") {
            r.truncate = static_cast<int>(integer(f));
          } else {
            unknown_key(f);
          }
        }
        w.rings.push_back(std::move(r));
      } else if (kw.text == "module") {
        ModuleDef m;
        m.loc = kw.loc;
        m.name = ident("a module name").text;
        keyword("over");
        m.ring = ident("a ring name").text;
        pending_module p;
        for (auto& f : fields()) {
          if (f.key == "gens") {
            for (const auto& v : list(f)) {
              if (v.type != Value::Type::Int) parse_error(v.loc, "expected a generator degree");
              m.gens.push_back(static_cast<int>(v.i));
            }
            p.gens = true;
          } else if (f.key == "relations_matrix") {
            for (const auto& row : list(f)) {
              if (row.type != Value::Type::List) parse_error(row.loc, "expected a list of entries");
              std::vector<std::string> entries;
              for (const auto& e : row.list) entries.push_back(string(e));
              m.relations.push_back(std::move(entries));
            }
          } else if (f.key == "ideal") {
            p.ideal = true;
            for (auto& s : strings(f)) m.relations.push_back({s});
          } else if (f.key == "residue") {
            p.residue = boolean(f);
          } else {
            unknown_key(f);
          }
        }
        if (p.ideal || p.residue) {
          if (p.gens) parse_error(m.loc, "gens cannot be combined with ideal or residue");
          m.gens = {0};
        }
        residue_.push_back(p.residue);
        w.modules.push_back(std::move(m));
      } else if (kw.text == "hom") {
        HomDef h;
        h.loc = kw.loc;
        h.name = ident("a hom name").text;
        keyword("from");
        h.source = ident("a ring name").text;
        keyword("to");
        h.target = ident("a ring name").text;
        for (auto& f : fields()) {
          if (f.key == "images") h.images = strings(f);
          else if (f.key == "scale") h.scale = static_cast<int>(integer(f));
          else if (f.key == "frobenius") h.frobenius = static_cast<int>(integer(f));
          else unknown_key(f);
        }
        w.homs.push_back(std::move(h));
      } else if (kw.text == "complex") {
        ComplexDef c;
        c.loc = kw.loc;
        c.name = ident("a complex name").text;
        keyword("over");
        c.ring = ident("a ring name").text;
        for (auto& f : fields()) {
          if (f.key == "module") c.module = reference(f);
          else if (f.key == "koszul") c.koszul = strings(f);
          else unknown_key(f);
        }
        if (c.module.empty()) parse_error(c.loc, "complex needs module=");
        w.complexes.push_back(std::move(c));
      } else if (kw.text == "task") {
        TaskDef t;
        t.loc = kw.loc;
        t.kind = ident("a task kind").text;
        for (auto& f : fields()) {
          if (f.key == "name") t.name = string(f.value);
          else t.params.emplace_back(f.key, f.value);
        }
        w.tasks.push_back(std::move(t));
      } else {
        parse_error(kw.loc, "unknown block '" + kw.text + "'");
      }
    }
    resolve(w);
    return w;
  }

 private:
  struct pending_module {
    bool gens = false;
    bool ideal = false;
    bool residue = false;
  };

  const Token& peek() const { return toks_[pos_]; }
  Token next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  Token ident(const std::string& what) {
    Token t = next();
    if (t.kind != Token::Kind::Ident) parse_error(t.loc, "expected " + what);
    return t;
  }
  void keyword(const std::string& kw) {
    Token t = next();
    if (t.kind != Token::Kind::Ident || t.text != kw) parse_error(t.loc, "expected '" + kw + "'");
  }
  void punct(const std::string& p) {
    Token t = next();
    if (t.kind != Token::Kind::Punct || t.text != p) parse_error(t.loc, "expected '" + p + "'");
  }
  bool at_punct(const std::string& p) const {
    return peek().kind == Token::Kind::Punct && peek().text == p;
  }

  std::vector<Field> fields() {
    punct("{");
    std::vector<Field> out;
    std::set<std::string> seen;
    while (!at_punct("}")) {
      Token key = ident("a key or '}'");
      if (!seen.insert(key.text).second) parse_error(key.loc, "duplicate key '" + key.text + "'");
      punct("=");
      out.push_back({key.text, key.loc, value()});
      if (at_punct(",")) next();
    }
    next();
    return out;
  }

  Value value() {
    Token t = next();
    Value v;
    v.loc = t.loc;
    switch (t.kind) {
      case Token::Kind::Int:
        v.type = Value::Type::Int;
        v.i = t.value;
        return v;
      case Token::Kind::String:
        v.type = Value::Type::String;
        v.s = t.text;
        return v;
      case Token::Kind::Ident:
        v.s = t.text;
        if (at_punct(":")) {
          next();
          Token d = next();
          if (d.kind != Token::Kind::Int) parse_error(d.loc, "expected a degree");
          v.type = Value::Type::Pair;
          v.i = d.value;
        } else {
          v.type = Value::Type::Ident;
        }
        return v;
      case Token::Kind::Punct:
        if (t.text == "[") {
          v.type = Value::Type::List;
          while (!at_punct("]")) {
            if (peek().kind == Token::Kind::End) parse_error(t.loc, "unterminated list");
            v.list.push_back(value());
            if (at_punct(",")) next();
          }
          next();
          return v;
        }
        break;
      case Token::Kind::End:
        break;
    }
    parse_error(t.loc, "expected a value");
  }

  [[noreturn]] void unknown_key(const Field& f) { parse_error(f.key_loc, "unknown key '" + f.key + "'"); }
  std::int64_t integer(const Field& f) {
    if (f.value.type != Value::Type::Int) parse_error(f.value.loc, "expected an integer for " + f.key);
    return f.value.i;
  }
  bool boolean(const Field& f) {
    if (f.value.type != Value::Type::Ident || (f.value.s != "true" && f.value.s != "false"))
      parse_error(f.value.loc, "expected true or false for " + f.key);
    return f.value.s == "true";
  }
  const std::vector<Value>& list(const Field& f) {
    if (f.value.type != Value::Type::List) parse_error(f.value.loc, "expected a list for " + f.key);
    return f.value.list;
  }
  std::string string(const Value& v) {
    if (v.type != Value::Type::String) parse_error(v.loc, "expected a quoted string");
    return v.s;
  }
  std::vector<std::string> strings(const Field& f) {
    std::vector<std::string> out;
    for (const auto& v : list(f)) out.push_back(string(v));
    return out;
  }
  std::string reference(const Field& f) {
    if (f.value.type != Value::Type::Ident) parse_error(f.value.loc, "expected a name for " + f.key);
    return f.value.s;
  }

  void resolve(Workspace& w) {
    std::map<std::string, const RingDef*> rings;
    std::set<std::string> all;
    auto claim = [&](const std::string& name, Location l) {
      if (!all.insert(name).second) fail(ErrorKind::ValidationError, at(l) + "duplicate name '" + name + "'");
    };
    for (const auto& r : w.rings) {
      claim(r.name, r.loc);
      rings[r.name] = &r;
    }
    auto need_ring = [&](const std::string& name, Location l) -> const RingDef& {
      auto it = rings.find(name);
      if (it == rings.end()) fail(ErrorKind::UnknownReference, at(l) + "unknown ring '" + name + "'");
      return *it->second;
    };
    std::set<std::string> modules, homs, complexes;
    for (std::size_t i = 0; i < w.modules.size(); ++i) {
      auto& m = w.modules[i];
      claim(m.name, m.loc);
      const RingDef& r = need_ring(m.ring, m.loc);
      if (residue_[i])
        for (const auto& v : r.vars) m.relations.push_back({v.name});
      modules.insert(m.name);
    }
    for (const auto& h : w.homs) {
      claim(h.name, h.loc);
      need_ring(h.source, h.loc);
      need_ring(h.target, h.loc);
      homs.insert(h.name);
    }
    for (const auto& c : w.complexes) {
      claim(c.name, c.loc);
      need_ring(c.ring, c.loc);
      if (!modules.count(c.module))
        fail(ErrorKind::UnknownReference, at(c.loc) + "unknown module '" + c.module + "'");
      complexes.insert(c.name);
    }
    std::set<std::string> task_names;
    for (std::size_t i = 0; i < w.tasks.size(); ++i) {
      auto& t = w.tasks[i];
      if (t.name.empty()) t.name = t.kind + "-" + std::to_string(i + 1);
      if (!task_names.insert(t.name).second)
        fail(ErrorKind::ValidationError, at(t.loc) + "duplicate task name '" + t.name + "'");
      for (const auto& [key, v] : t.params) {
        const std::set<std::string>* pool = nullptr;
        std::set<std::string> ring_names;
        if (key == "ring") {
          for (const auto& r : w.rings) ring_names.insert(r.name);
          pool = &ring_names;
        } else if (key == "module") {
          pool = &modules;
        } else if (key == "hom") {
          pool = &homs;
        } else if (key == "complex") {
          pool = &complexes;
        }
        if (!pool) continue;
        if (v.type != Value::Type::Ident) parse_error(v.loc, "expected a name for " + key);
        if (!pool->count(v.s))
          fail(ErrorKind::UnknownReference, at(v.loc) + "unknown " + key + " '" + v.s + "'");
      }
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  std::vector<bool> residue_;
};

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

std::string quoted_list(const std::vector<std::string>& xs) {
  std::string out = "[";
  for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? ", " : "") + quote(xs[i]);
  return out + "]";
}

std::string emit_value(const Value& v) {
  switch (v.type) {
    case Value::Type::Int: return std::to_string(v.i);
    case Value::Type::String: return quote(v.s);
    case Value::Type::Ident: return v.s;
    case Value::Type::Pair: return v.s + ":" + std::to_string(v.i);
    case Value::Type::List: {
      std::string out = "[";
      for (std::size_t i = 0; i < v.list.size(); ++i) out += (i ? ", " : "") + emit_value(v.list[i]);
      return out + "]";
    }
  }
  return "";
}

}  // namespace

Workspace parse_workspace(const std::string& text) { return Parser(Lexer(text).run()).run(); }

std::string emit_workspace(const Workspace& w) {
  std::ostringstream o;
  o << "defaults { nmax=" << w.defaults.nmax << " D=" << w.defaults.D << " window=" << w.defaults.window
    << " }\n";
  for (const auto& r : w.rings) {
    o << "ring " << r.name << " { char=" << r.p << " vars=[";
    for (std::size_t i = 0; i < r.vars.size(); ++i)
      o << (i ? ", " : "") << r.vars[i].name << ":" << r.vars[i].degree;
    o << "] relations=" << quoted_list(r.relations);
    if (r.truncate) o << " truncate=" << *r.truncate;
    o << " }\n";
  }
  for (const auto& m : w.modules) {
    o << "module " << m.name << " over " << m.ring << " { gens=[";
    for (std::size_t i = 0; i < m.gens.size(); ++i) o << (i ? ", " : "") << m.gens[i];
    o << "] relations_matrix=[";
    for (std::size_t i = 0; i < m.relations.size(); ++i) o << (i ? ", " : "") << quoted_list(m.relations[i]);
    o << "] }\n";
  }
  for (const auto& h : w.homs) {
    o << "hom " << h.name << " from " << h.source << " to " << h.target << " {";
    if (h.frobenius) o << " frobenius=" << *h.frobenius;
    else o << " images=" << quoted_list(h.images) << " scale=" << h.scale;
    o << " }\n";
  }
  for (const auto& c : w.complexes) {
    o << "complex " << c.name << " over " << c.ring << " { module=" << c.module;
    if (!c.koszul.empty()) o << " koszul=" << quoted_list(c.koszul);
    o << " }\n";
  }
  for (const auto& t : w.tasks) {
    o << "task " << t.kind << " { name=" << quote(t.name);
    for (const auto& [k, v] : t.params) o << " " << k << "=" << emit_value(v);
    o << " }\n";
  }
  return o.str();
}

Environment build_environment(const Workspace& w) {
  Environment env;
  env.defaults = w.defaults;
  for (const auto& t : w.tasks) {
    const auto& kinds = task_kinds();
    if (std::find(kinds.begin(), kinds.end(), t.kind) == kinds.end())
      fail(ErrorKind::ValidationError, at(t.loc) + "unknown task kind '" + t.kind + "'");
  }
  auto located = [](Location l, const std::function<void()>& f) {
    try {
      f();
    } catch (const Error& e) {
      throw Error(e.kind(), at(l) + e.what(), e.degree());
    }
  };
  for (const auto& r : w.rings)
    located(r.loc, [&] {
      env.rings[r.name] = GradedRing::create(r.p, r.vars, r.relations, r.truncate.value_or(w.defaults.D));
    });
  for (const auto& m : w.modules)
    located(m.loc, [&] {
      auto g = GradedModule::from_strings(env.rings.at(m.ring), m.gens, m.relations);
      g.validate();
      env.modules.emplace(m.name, g.degreewise());
    });
  for (const auto& h : w.homs)
    located(h.loc, [&] {
      const auto& src = env.rings.at(h.source);
      const auto& dst = env.rings.at(h.target);
      if (h.frobenius) {
        if (!same_ring(src, dst)) fail(ErrorKind::ValidationError, "frobenius needs an endomorphism");
        env.homs[h.name] = LocalHom::frobenius(src, *h.frobenius);
      } else {
        env.homs[h.name] = LocalHom::create(src, dst, h.images, h.scale);
      }
    });
  for (const auto& c : w.complexes)
    located(c.loc, [&] {
      const auto& m = env.modules.at(c.module);
      const auto& r = env.rings.at(c.ring);
      if (!same_ring(m.ring(), r)) fail(ErrorKind::ValidationError, "module is over another ring");
      std::vector<RingElement> z;
      for (const auto& s : c.koszul) z.push_back(r->parse(s));
      env.complexes.emplace(c.name, z.empty() ? EvaluatedComplex::from_module(m) : koszul_complex(m, z));
    });
  return env;
}

}  // namespace homolocal
