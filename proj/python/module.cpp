#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "termweave/bench.hpp"
#include "termweave/codegen.hpp"
#include "termweave/match_one.hpp"
#include "termweave/net.hpp"
#include "termweave/parse.hpp"
#include "termweave/rewrite.hpp"

namespace py = pybind11;
using namespace termweave;

namespace {

// {name: "a"} or {name: ("b", "c")}
py::dict to_dict(const Substitution &s) {
  py::dict d;
  for (const auto &[name, b] : s) {
    if (b.is_sequence()) {
      py::tuple items(b.items().size());
      for (std::size_t i = 0; i < b.items().size(); ++i)
        items[i] = to_string(b.items()[i]);
      d[py::str(name)] = items;
    } else {
      d[py::str(name)] = to_string(b.term());
    }
  }
  return d;
}

Term term_of(const py::object &o, const SignatureTable &sig) {
  if (py::isinstance<Term>(o))
    return o.cast<Term>();
  return parse_term(o.cast<std::string>(), sig);
}

Pattern pattern_of(const py::object &o, const SignatureTable &sig) {
  if (py::isinstance<Pattern>(o))
    return o.cast<Pattern>();
  return Pattern::parse(o.cast<std::string>(), sig);
}

class ManyMatcherPy {
public:
  ManyMatcherPy(SignatureTable sig, const std::vector<std::string> &patterns) : net_(std::move(sig)) {
    for (const auto &p : patterns)
      net_.add(Pattern::parse(p, net_.signature()));
  }
  std::vector<std::pair<std::size_t, py::dict>> match(const py::object &subject) const {
    std::vector<std::pair<std::size_t, py::dict>> out;
    for (const auto &m : net_.match_sorted(term_of(subject, net_.signature())))
      out.emplace_back(m.pattern, to_dict(m.sigma));
    return out;
  }
  std::size_t states() const { return net_.states().size(); }
  std::size_t patterns() const { return net_.pattern_count(); }
  const DiscriminationNet &net() const { return net_; }

private:
  DiscriminationNet net_;
};

} // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "termweave: associative-commutative pattern matching and term rewriting";

  py::register_exception<ParseError>(m, "ParseError", PyExc_ValueError);
  py::register_exception<RuleError>(m, "RuleError", PyExc_ValueError);
  py::register_exception<codegen::CodegenError>(m, "CodegenError", PyExc_ValueError);

  py::class_<SignatureTable>(m, "Signature")
      .def(py::init<>())
      .def(py::init([](const std::string &text) { return SignatureTable::parse(text); }), py::arg("text"))
      .def("to_text", &SignatureTable::to_text)
      .def("__repr__", [](const SignatureTable &s) { return "Signature(" + py::repr(py::str(s.to_text())).cast<std::string>() + ")"; });

  py::class_<Term>(m, "Term")
      .def(py::init([](const std::string &text, const SignatureTable &sig) { return parse_term(text, sig); }),
           py::arg("text"), py::arg("sig") = SignatureTable())
      .def("__str__", [](const Term &t) { return to_string(t); })
      .def("__repr__", [](const Term &t) { return "Term('" + to_string(t) + "')"; })
      .def("__eq__", [](const Term &a, const Term &b) { return a == b; })
      .def("__lt__", [](const Term &a, const Term &b) { return a < b; })
      .def("__hash__", &Term::hash);

  py::class_<Pattern>(m, "Pattern")
      .def(py::init([](const std::string &text, const SignatureTable &sig) { return Pattern::parse(text, sig); }),
           py::arg("text"), py::arg("sig") = SignatureTable())
      .def("__str__", &Pattern::to_string)
      .def("__repr__", [](const Pattern &p) { return "Pattern('" + p.to_string() + "')"; });

  m.def(
      "match",
      [](const py::object &subject, const py::object &pattern, const SignatureTable &sig) {
        std::vector<py::dict> out;
        for (const auto &s : match_sorted(term_of(subject, sig), pattern_of(pattern, sig), sig))
          out.push_back(to_dict(s));
        return out;
      },
      py::arg("subject"), py::arg("pattern"), py::arg("sig") = SignatureTable(),
      "All matches as dicts, in canonical order.");

  py::class_<ManyMatcherPy>(m, "ManyToOneMatcher")
      .def(py::init<SignatureTable, const std::vector<std::string> &>(), py::arg("sig"), py::arg("patterns"))
      .def("match", &ManyMatcherPy::match, py::arg("subject"), "(pattern id, substitution) pairs, sorted")
      .def_property_readonly("states", &ManyMatcherPy::states)
      .def_property_readonly("pattern_count", &ManyMatcherPy::patterns)
      .def(
          "generate_source",
          [](const ManyMatcherPy &mm, const std::string &name) {
            auto spec = codegen::generate_matcher_source(mm.net(), name);
            py::dict units;
            for (const auto &[file, text] : spec.units)
              units[py::str(file)] = text;
            return py::make_tuple(units, spec.manifest);
          },
          py::arg("name") = "matcher", "({file: source}, manifest)");

  py::class_<ReplacementRule>(m, "Rule")
      .def(py::init([](const std::string &text, const SignatureTable &sig) { return ReplacementRule::parse(text, sig); }),
           py::arg("text"), py::arg("sig") = SignatureTable())
      .def("__str__", &ReplacementRule::to_string);

  m.def("parse_rules", &parse_rules, py::arg("text"), py::arg("sig") = SignatureTable());

  m.def(
      "replace_all",
      [](const py::object &subject, const std::vector<ReplacementRule> &rules, const SignatureTable &sig,
         std::size_t max_steps, const std::string &engine) {
        const Term t = term_of(subject, sig);
        RewriteReport rep;
        if (engine == "net")
          rep = replace_all(t, rules, sig, max_steps, *make_net_rules(rules, sig), true);
        else if (engine == "one2one")
          rep = replace_all(t, rules, sig, max_steps, true);
        else
          throw py::value_error("engine must be one2one or net");
        py::list trace;
        for (const auto &st : rep.trace)
          trace.append(py::make_tuple(to_string(st.position), st.rule, to_dict(st.sigma)));
        return py::make_tuple(rep.result, rep.normal_form, trace);
      },
      py::arg("subject"), py::arg("rules"), py::arg("sig") = SignatureTable(), py::arg("max_steps") = 10000,
      py::arg("engine") = "one2one", "(result, normal_form, [(position, rule, sigma), ...])");

  m.def(
      "bench",
      [](const std::string &workload, std::size_t size, std::uint64_t seed, const std::string &engines,
         unsigned repetitions) {
        bench::BenchConfig cfg;
        cfg.workload = workload;
        cfg.size = size;
        cfg.seed = seed;
        cfg.engines = bench::parse_engines(engines);
        cfg.repetitions = repetitions;
        std::vector<py::dict> out;
        for (const auto &r : bench::run_bench(cfg)) {
          py::dict d;
          d["workload"] = r.workload;
          d["engine"] = bench::to_string(r.engine);
          d["subjects"] = r.subjects;
          d["patterns"] = r.patterns;
          d["wall_ms"] = r.wall_ms;
          d["comparisons"] = r.comparisons;
          d["matches"] = r.matches;
          out.push_back(std::move(d));
        }
        return out;
      },
      py::arg("workload"), py::arg("size") = 50, py::arg("seed") = 1, py::arg("engines") = "one2one,net,codegen",
      py::arg("repetitions") = 5);
}
