#include "dirmbo/label_io.hpp"

#include <fstream>
#include <iomanip>
#include <stdexcept>

namespace dirmbo {

namespace fs = std::filesystem;

nlohmann::json domain_sidecar(const Domain& d) {
  nlohmann::json j;
  if (d.is_torus()) {
    const auto& t = d.torus();
    j["domain_kind"] = "torus";
    j["d"] = t.dim();
    j["n"] = t.n();
    j["length"] = t.length();
  } else {
    const auto& s = d.sphere();
    j["domain_kind"] = "sphere";
    j["d"] = 2;
    j["n_theta"] = s.n_theta();
    j["n_phi"] = s.n_phi();
    j["lmax"] = s.lmax();
  }
  return j;
}

nlohmann::json label_sidecar(const Labeling& labels) {
  auto j = domain_sidecar(*labels.domain());
  j["k"] = labels.k();
  return j;
}

DomainPtr domain_from_sidecar(const nlohmann::json& j) {
  const auto kind = j.at("domain_kind").get<std::string>();
  if (kind == "torus")
    return make_torus(j.at("d").get<int>(), j.at("n").get<int>(), j.value("length", 2.0));
  if (kind == "sphere")
    return make_sphere(j.at("n_theta").get<int>(), j.at("n_phi").get<int>(), j.value("lmax", -1));
  throw std::runtime_error("unknown domain_kind '" + kind + "'");
}

fs::path sidecar_path(const fs::path& bin) {
  auto p = bin;
  p.replace_extension(".json");
  return p;
}

void write_labels(const Labeling& labels, const fs::path& bin) {
  if (bin.extension() == ".json") throw std::invalid_argument("label file must not use the .json extension");
  {
    std::ofstream out(bin, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + bin.string());
    const auto l = labels.labels();
    out.write(reinterpret_cast<const char*>(l.data()), static_cast<std::streamsize>(l.size()));
    if (!out) throw std::runtime_error("write failed: " + bin.string());
  }
  std::ofstream side(sidecar_path(bin));
  if (!side) throw std::runtime_error("cannot write " + sidecar_path(bin).string());
  side << label_sidecar(labels).dump(2) << '\n';
}

Labeling read_labels(const fs::path& bin) {
  const auto side_path = sidecar_path(bin);
  std::ifstream side(side_path);
  if (!side) throw std::runtime_error("missing label sidecar " + side_path.string());
  DomainPtr domain;
  int k = 0;
  try {
    const auto j = nlohmann::json::parse(side);
    domain = domain_from_sidecar(j);
    k = j.at("k").get<int>();
  } catch (const std::exception& e) {
    throw std::runtime_error(side_path.string() + ": malformed sidecar: " + e.what());
  }
  if (k < 1 || k > kMaxComponents) throw std::runtime_error(side_path.string() + ": k out of range");

  std::ifstream in(bin, std::ios::binary | std::ios::ate);
  if (!in) throw std::runtime_error("cannot read " + bin.string());
  const auto bytes = static_cast<std::size_t>(in.tellg());
  if (bytes != domain->size())
    throw std::runtime_error(bin.string() + ": holds " + std::to_string(bytes) + " labels, grid has " +
                             std::to_string(domain->size()));
  std::vector<Label> labels(bytes);
  in.seekg(0);
  in.read(reinterpret_cast<char*>(labels.data()), static_cast<std::streamsize>(bytes));
  for (auto l : labels)
    if (l >= k) throw std::runtime_error(bin.string() + ": label " + std::to_string(l) + " >= k = " + std::to_string(k));
  return Labeling(domain, k, std::move(labels));
}

void write_labels_csv(const Labeling& labels, const fs::path& csv) {
  std::ofstream out(csv);
  if (!out) throw std::runtime_error("cannot write " + csv.string());
  out << std::setprecision(17);
  const auto& d = *labels.domain();
  if (d.is_torus()) {
    const auto& t = d.torus();
    out << "index";
    for (int a = 0; a < t.dim(); ++a) out << ",x" << a + 1;
    out << ",label\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const auto idx = t.unravel(i);
      out << i;
      for (int a = 0; a < t.dim(); ++a) out << ',' << t.coordinate(idx[a]);
      out << ',' << static_cast<int>(labels[i]) << '\n';
    }
  } else {
    const auto& s = d.sphere();
    out << "index,theta,phi,x,y,z,label\n";
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const auto it = static_cast<std::size_t>(s.n_phi());
      const auto p = s.point(i);
      out << i << ',' << s.theta_nodes()[i / it] << ',' << s.phi(static_cast<int>(i % it)) << ',' << p[0]
          << ',' << p[1] << ',' << p[2] << ',' << static_cast<int>(labels[i]) << '\n';
    }
  }
}

}  // namespace dirmbo
