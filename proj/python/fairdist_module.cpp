#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "fairdist/experiment.hpp"
#include "fairdist/fairdiv.hpp"
#include "fairdist/map_io.hpp"
#include "fairdist/render.hpp"

namespace py = pybind11;
using namespace fairdist;

namespace {

py::object fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(to_string(r));
}

/// Round-trips a JSON document through Python's json module.
py::object to_python(const nlohmann::ordered_json& doc) {
  return py::module_::import("json").attr("loads")(doc.dump());
}

nlohmann::json from_python(const py::object& obj) {
  return nlohmann::json::parse(py::module_::import("json").attr("dumps")(obj).cast<std::string>());
}

Rational rational_arg(const py::handle& value) { return parse_rational(py::str(value).cast<std::string>()); }

Party party_arg(const std::string& text) {
  if (text == "A") return Party::A;
  if (text == "B") return Party::B;
  throw ValidationError({"party must be A or B, got '" + text + "'"});
}

py::dict target_dict(const TargetReport& r) {
  py::dict d;
  d["best"] = fraction(r.best);
  d["worst"] = fraction(r.worst);
  d["target"] = fraction(r.target);
  d["best_witness"] = r.best_witness.assignment();
  d["worst_witness"] = r.worst_witness.assignment();
  return d;
}

SplitSequence sequence_for(const ParcelMap& map, const std::string& strategy, std::uint64_t seed) {
  return generate_split_sequence(map, SequenceStrategy::parse(strategy), seed);
}

}  // namespace

PYBIND11_MODULE(fairdist, m) {
  m.doc() = "Fair-division redistricting engine";

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  auto infeasible = py::register_exception<InfeasibleError>(m, "InfeasibleError", PyExc_RuntimeError);
  py::register_exception<NoSwitchPointError>(m, "NoSwitchPointError", infeasible.ptr());
  py::register_exception<SequenceError>(m, "SequenceError", infeasible.ptr());

  py::class_<ParcelMap>(m, "ParcelMap")
      .def_property_readonly("parcel_count", &ParcelMap::parcel_count)
      .def_property_readonly("n_districts", &ParcelMap::n_districts)
      .def_property_readonly("ids", [](const ParcelMap& map) {
        std::vector<std::string> ids;
        for (const auto& p : map.parcels()) ids.push_back(p.id);
        return ids;
      })
      .def_property_readonly("statewide_share_a", [](const ParcelMap& map) { return fraction(map.statewide_share_a()); })
      .def("to_json", [](const ParcelMap& map) { return to_python(map_to_json(map)); })
      .def("__repr__", [](const ParcelMap& map) {
        std::ostringstream s;
        s << "<ParcelMap " << map.parcel_count() << " parcels, " << map.n_districts() << " districts>";
        return s.str();
      });

  m.def("load_map", [](const std::filesystem::path& path) { return load_map(path); }, py::arg("path"));
  m.def("map_from_json", [](const py::object& doc) { return map_from_json(from_python(doc)); }, py::arg("doc"));
  m.def("grid_map", [](int rows, int cols, int n, const std::vector<py::object>& shares) {
    std::vector<Rational> r;
    for (const auto& s : shares) r.push_back(rational_arg(s));
    return make_grid_map(rows, cols, n, r);
  }, py::arg("rows"), py::arg("cols"), py::arg("n_districts"), py::arg("shares_a"));

  m.def("count_divisions", [](const ParcelMap& map) {
    std::ostringstream s;
    s << count_divisions(map);
    return py::int_(py::str(s.str()));
  }, py::arg("map"));
  m.def("enumerate_divisions", [](const ParcelMap& map) {
    std::vector<std::vector<int>> out;
    for_each_division(map, [&](const Division& d) {
      out.push_back(d.assignment());
      return true;
    });
    return out;
  }, py::arg("map"), "Every viable division as a list of district labels in map order.");
  m.def("geometric_target", [](const ParcelMap& map, const std::string& party) {
    return target_dict(geometric_target(map, RatingSpec::win(party_arg(party)), VotingModel::outcome()));
  }, py::arg("map"), py::arg("party") = "A");
  m.def("ksplit_geometric_target", [](const ParcelMap& map, int k, const std::vector<std::string>& piece1,
                                      const std::string& party) {
    ParcelSet piece;
    for (const auto& id : piece1) {
      auto i = map.index_of(id);
      if (!i) throw ValidationError({"unknown parcel id '" + id + "'"});
      piece.insert(*i);
    }
    const Split split{k, piece};
    if (auto v = validate_split(map, split); !v.empty()) throw ValidationError(v);
    return target_dict(ksplit_geometric_target(map, split, RatingSpec::win(party_arg(party)), VotingModel::outcome()));
  }, py::arg("map"), py::arg("k"), py::arg("piece1"), py::arg("party") = "A");

  m.def("split_sequence", [](const ParcelMap& map, const std::string& strategy, std::uint64_t seed) {
    return to_python(split_sequence_to_json(map, sequence_for(map, strategy, seed), strategy));
  }, py::arg("map"), py::arg("strategy") = "sweep:vertical", py::arg("seed") = 0);
  m.def("run_protocol", [](const ParcelMap& map, const std::string& strategy, std::uint64_t seed,
                           std::optional<std::uint64_t> sequence_seed) {
    const auto seq = sequence_for(map, strategy, sequence_seed ? *sequence_seed : derive_seed(~seed, 0));
    const auto t = run_protocol(map, seq, PartyAgent::win_maximizer(Party::A), PartyAgent::win_maximizer(Party::B),
                                seed, strategy);
    py::dict out = to_python(transcript_to_json(map, t));
    out["summary"] = summary_table(t);
    return out;
  }, py::arg("map"), py::arg("strategy") = "sweep:vertical", py::arg("seed") = 0, py::arg("sequence_seed") = py::none(),
     "Runs the protocol with Win-maximising agents and returns the transcript.");
  m.def("run_experiment", [](const std::filesystem::path& config_path) {
    const auto out = run_experiment(load_experiment_config(config_path));
    py::dict d;
    d["final_wins_a"] = fraction(out.final_wins_a);
    d["files"] = out.files;
    return d;
  }, py::arg("config_path"), "Runs an experiment config in memory; nothing is written.");

  m.def("render", [](const ParcelMap& map, const std::vector<int>& assignment, const std::string& format) {
    return render_division(map, Division(assignment), render_format_from_string(format));
  }, py::arg("map"), py::arg("assignment"), py::arg("format") = "ascii");

  m.def("adjusted_winner", [](const std::vector<py::object>& a, const std::vector<py::object>& b,
                              std::optional<std::vector<std::string>> goods) {
    std::vector<Rational> ra, rb;
    for (const auto& x : a) ra.push_back(rational_arg(x));
    for (const auto& x : b) rb.push_back(rational_arg(x));
    std::vector<std::string> names;
    if (goods) {
      names = *goods;
    } else {
      for (std::size_t i = 0; i < ra.size(); ++i) names.push_back("good" + std::to_string(i + 1));
    }
    const auto points = PointAllocation::normalized(names, ra, rb);
    return to_python(to_json(points, adjusted_winner(points)));
  }, py::arg("bids_a"), py::arg("bids_b"), py::arg("goods") = py::none());
  m.def("cut_and_choose", [](const py::object& a, const py::object& b) {
    return to_python(to_json(cut_and_choose(valuation_from_json(from_python(a)), valuation_from_json(from_python(b)))));
  }, py::arg("valuation_a"), py::arg("valuation_b"),
     "Valuations are {'breakpoints': [...], 'densities': [...]} on [0, 1].");
}
