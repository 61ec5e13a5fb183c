#include "termweave/codegen.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

#include "termweave/parse.hpp"

namespace termweave::codegen {

namespace {

std::string literal(const std::string &s) {
  std::string out = "\"";
  for (char c : s) {
    switch (c) {
    case '"':
      out += "\\\"";
      break;
    case '\\':
      out += "\\\\";
      break;
    case '\n':
      out += "\\n";
      break;
    case '\t':
      out += "\\t";
      break;
    default:
      out += c;
    }
  }
  return out + "\"";
}

bool identifier(const std::string &s) {
  if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_'))
    return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; });
}

// states reachable from the outer root; only these prune
std::vector<char> outer_states(const DiscriminationNet &net) {
  std::vector<char> seen(net.states().size(), 0);
  std::vector<std::size_t> todo{net.root()};
  seen[net.root()] = 1;
  while (!todo.empty()) {
    const std::size_t s = todo.back();
    todo.pop_back();
    for (const auto &tr : net.states()[s].out)
      if (!seen[tr.target]) {
        seen[tr.target] = 1;
        todo.push_back(tr.target);
      }
  }
  return seen;
}

std::string describe(const Label &l) {
  std::ostringstream o;
  o << static_cast<int>(l.kind) << ',' << static_cast<int>(l.context) << ',' << l.wrap << ',' << l.plan << ','
    << l.head << ',' << to_string(l.term);
  if (l.term.is_wildcard())
    o << ',' << l.term.wildcard().symbol_class;
  return o.str();
}

} // namespace

std::uint64_t fingerprint(const DiscriminationNet &net) {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](const std::string &s) {
    for (unsigned char c : s) {
      h ^= c;
      h *= 1099511628211ull;
    }
    h ^= 0xff;
    h *= 1099511628211ull;
  };
  for (std::size_t i = 0; i < net.states().size(); ++i) {
    const auto &st = net.states()[i];
    mix("S" + std::to_string(i));
    for (std::size_t f : st.finals)
      mix("F" + std::to_string(f));
    for (const auto &tr : st.out)
      mix(describe(tr.label) + ">" + std::to_string(tr.target));
  }
  return h;
}

GeneratedMatcherSpec generate_matcher_source(const DiscriminationNet &net, const std::string &name) {
  if (!identifier(name))
    throw CodegenError("matcher name must be an identifier: '" + name + "'");
  for (const auto &e : net.entries())
    for (const auto &c : e.pattern.constraints)
      if (c.is_host())
        throw CodegenError("host constraint " + c.text() + " cannot be embedded in generated code");

  GeneratedMatcherSpec spec;
  spec.entry_point = "termweave_generated_" + name;
  const std::string impl = spec.entry_point + "_impl";

  std::vector<std::string> constants;
  std::map<std::string, std::size_t> constant_ids;
  auto constant = [&](const Term &t) {
    const std::string text = to_string(t);
    auto [it, fresh] = constant_ids.emplace(text, constants.size());
    if (fresh)
      constants.push_back(text);
    return it->second;
  };

  const auto &states = net.states();
  const auto outer = outer_states(net);
  std::ostringstream body;
  for (std::size_t i = 0; i < states.size(); ++i) {
    const auto &st = states[i];
    body << "\nvoid s" << i << "(cg::Walker &w, const WalkState &ws) {\n  w.enter();\n";
    if (!st.finals.empty())
      body << "  w.accept(" << i << ", ws);\n";
    for (std::size_t k = 0; k < st.out.size(); ++k) {
      const auto &tr = st.out[k];
      const std::size_t t = tr.target;
      const bool prune = outer[i] != 0;
      std::string indent = "  ";
      if (prune) {
        body << "  if (w.live(" << t << "))\n";
        indent = "    ";
      }
      switch (tr.label.kind) {
      case Label::Kind::atom:
      case Label::Kind::ground:
        body << indent << "if (auto n = w.atom(ws, w.constant(" << constant(tr.label.term) << ")))"
             << " // " << to_string(tr.label) << "\n"
             << indent << "  s" << t << "(w, *n);\n";
        break;
      case Label::Kind::open:
        body << indent << "if (auto n = w.open(ws, " << literal(tr.label.head) << ", "
             << (net.signature().at(tr.label.head).one_identity ? "true" : "false") << "))\n"
             << indent << "  s" << t << "(w, *n);\n";
        break;
      case Label::Kind::close:
        body << indent << "if (auto n = w.close(ws))\n" << indent << "  s" << t << "(w, *n);\n";
        break;
      default:
        body << indent << "for (const auto &n : w.step(" << i << ", " << k << ", ws)) { // "
             << to_string(tr.label) << "\n"
             << indent << "  s" << t << "(w, n);\n";
        if (prune)
          body << indent << "  if (!w.live(" << t << "))\n" << indent << "    break;\n";
        body << indent << "}\n";
      }
    }
    body << "}\n";
  }

  std::ostringstream src;
  src << "// Generated by termweave codegen from " << net.pattern_count() << " patterns, " << states.size()
      << " states. Do not edit.\n"
      << "#include \"termweave/codegen.hpp\"\n\n"
      << "namespace " << impl << " {\nnamespace {\n\nnamespace cg = termweave::codegen;\nusing termweave::WalkState;\n\n"
      << "const char *const signature_text = " << literal(net.signature().to_text()) << ";\n\n"
      << "const char *const patterns[] = {\n";
  for (std::size_t id = 0; id < net.pattern_count(); ++id)
    src << "    " << literal(net.pattern(id).to_string()) << ",\n";
  src << "    nullptr};\n\nconst char *const constants[] = {\n";
  for (const auto &c : constants)
    src << "    " << literal(c) << ",\n";
  src << "    nullptr};\n\n";
  for (std::size_t i = 0; i < states.size(); ++i)
    src << "void s" << i << "(cg::Walker &w, const WalkState &ws);\n";
  src << body.str() << "\nconst cg::StateFn states[] = {";
  for (std::size_t i = 0; i < states.size(); ++i)
    src << (i % 8 ? " " : "\n    ") << "s" << i << ",";
  // everything but the entry point lives in its own namespace, so units can share a translation unit
  src << "\n};\n\n} // namespace\n} // namespace " << impl << "\n\n"
      << "extern const termweave::codegen::CompiledMatcher " << spec.entry_point << ";\n"
      << "const termweave::codegen::CompiledMatcher " << spec.entry_point << " = {\n"
      << "    " << literal(name) << ", " << impl << "::signature_text, " << impl << "::patterns, "
      << net.pattern_count() << ", " << impl << "::constants, " << constants.size() << ", " << impl
      << "::states, " << states.size() << ", 0x" << std::hex << fingerprint(net) << std::dec << "ull};\n\n"
      << "namespace " << impl << " {\nnamespace {\nconst cg::Registrar registrar(&" << spec.entry_point
      << ");\n} // namespace\n} // namespace " << impl << "\n";
  spec.units.emplace_back(name + ".cpp", src.str());

  for (std::size_t id = 0; id < net.pattern_count(); ++id)
    spec.manifest += std::to_string(id) + "\t" + net.pattern(id).to_string() + "\n";
  return spec;
}

void write_spec(const GeneratedMatcherSpec &spec, const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir);
  auto put = [&dir](const std::string &file, const std::string &text) {
    const auto path = dir / file;
    // skip identical content so build systems see no change
    {
      std::ifstream in(path, std::ios::binary);
      if (in) {
        std::ostringstream old;
        old << in.rdbuf();
        if (old.str() == text)
          return;
      }
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << text;
    out.close();
    if (!out)
      throw CodegenError("cannot write " + path.string());
  };
  for (const auto &[file, text] : spec.units)
    put(file, text);
  put("manifest.tsv", spec.manifest);
}

// ---- runtime -----------------------------------------------------------------

Walker::Walker(const DiscriminationNet &net, const std::vector<Term> &constants, const StateFn *states,
               MatchStats *stats, NetMatchOptions options)
    : net_(net), constants_(constants), states_(states), env_(net.make_env(stats, options)) {
  env_.run_inner = [this](std::size_t root, const Term &u, NetEnv &) {
    std::vector<std::pair<std::size_t, Substitution>> found;
    inner_.push_back(&found);
    states_[root](*this, initial_walk_state(u));
    inner_.pop_back();
    return found;
  };
}

std::optional<WalkState> Walker::atom(const WalkState &ws, const Term &t) {
  env_.ctx.compare();
  const WalkFrame &f = ws.frames.back();
  const auto items = f.items();
  if (f.pos < items.size() && items[f.pos] == t)
    return advanced(ws, 1);
  return std::nullopt;
}

std::optional<WalkState> Walker::open(const WalkState &ws, const char *head, bool one_identity) {
  env_.ctx.compare();
  const WalkFrame &f = ws.frames.back();
  const auto items = f.items();
  if (f.pos >= items.size())
    return std::nullopt;
  const Term &s = items[f.pos];
  const bool same = s.is_compound() && s.name() == head;
  if (!same && !one_identity)
    return std::nullopt;
  WalkState n = ws;
  n.frames.back().pos += 1;
  n.frames.push_back({s, !same, 0});
  return n;
}

std::optional<WalkState> Walker::close(const WalkState &ws) {
  env_.ctx.compare();
  const WalkFrame &f = ws.frames.back();
  if (f.pos < f.items().size() || ws.frames.size() < 2)
    return std::nullopt;
  WalkState n = ws;
  n.frames.pop_back();
  return n;
}

Generator<WalkState> Walker::step(std::size_t state, std::size_t transition, const WalkState &ws) {
  return net_.step(net_.states()[state].out[transition].label, ws, env_);
}

void Walker::accept(std::size_t state, const WalkState &ws) {
  const auto &st = net_.states()[state];
  if (!inner_.empty()) {
    for (std::size_t id : st.finals)
      inner_.back()->emplace_back(id, ws.sigma);
    return;
  }
  for (auto &m : net_.accept(st, ws, env_)) {
    if (stopped_)
      return;
    if (!sink_)
      out_.push_back(std::move(m));
    else if (!(*sink_)(m))
      stopped_ = true;
  }
}

std::vector<NetMatch> Walker::run(const Term &subject) {
  out_.clear();
  sink_ = nullptr;
  stopped_ = false;
  states_[net_.root()](*this, initial_walk_state(subject));
  return std::move(out_);
}

void Walker::run(const Term &subject, const std::function<bool(const NetMatch &)> &sink) {
  sink_ = &sink;
  stopped_ = false;
  states_[net_.root()](*this, initial_walk_state(subject));
  sink_ = nullptr;
}

GeneratedMatcher::GeneratedMatcher(const CompiledMatcher &cm) : name_(cm.name), states_(cm.states) {
  SignatureTable sig = SignatureTable::parse(cm.signature_text);
  net_ = std::make_shared<DiscriminationNet>(sig);
  for (std::size_t i = 0; i < cm.pattern_count; ++i)
    if (net_->add(Pattern::parse(cm.patterns[i], net_->signature())) != i)
      throw CodegenError(name_ + ": embedded pattern " + std::to_string(i) + " collapsed into an earlier one");
  if (net_->states().size() != cm.state_count || fingerprint(*net_) != cm.fingerprint)
    throw CodegenError(name_ + ": rebuilt net does not have the generated shape");
  for (std::size_t i = 0; i < cm.constant_count; ++i)
    constants_.push_back(parse_term(cm.constants[i], net_->signature()));
}

std::vector<NetMatch> GeneratedMatcher::match(const Term &subject, MatchStats *stats, NetMatchOptions options) const {
  Walker w(*net_, constants_, states_, stats, options);
  return w.run(subject);
}

void GeneratedMatcher::match(const Term &subject, MatchStats *stats, NetMatchOptions options,
                             const std::function<bool(const NetMatch &)> &sink) const {
  Walker w(*net_, constants_, states_, stats, options);
  w.run(subject, sink);
}

std::vector<NetMatch> GeneratedMatcher::match_sorted(const Term &subject, MatchStats *stats) const {
  auto out = match(subject, stats);
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::map<std::string, const CompiledMatcher *> &registry() {
  static std::map<std::string, const CompiledMatcher *> r;
  return r;
}

} // namespace

Registrar::Registrar(const CompiledMatcher *cm) { registry()[cm->name] = cm; }

const CompiledMatcher *find_matcher(const std::string &name) {
  auto it = registry().find(name);
  return it == registry().end() ? nullptr : it->second;
}

std::vector<const CompiledMatcher *> registered_matchers() {
  std::vector<const CompiledMatcher *> out;
  for (const auto &[n, cm] : registry())
    out.push_back(cm);
  return out;
}

} // namespace termweave::codegen
