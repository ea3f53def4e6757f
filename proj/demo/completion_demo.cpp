// Builds G(n, d/n), reports the strong 4-core split and a completion certificate.
#include <cstdlib>
#include <iostream>

#include "hcomp/hcomp.hpp"

int main(int argc, char** argv) {
  const std::size_t n = argc > 1 ? std::strtoul(argv[1], nullptr, 10) : 800;
  const double d = argc > 2 ? std::strtod(argv[2], nullptr) : 10.0;
  const std::uint64_t seed = argc > 3 ? std::strtoull(argv[3], nullptr, 10) : 2;

  const hcomp::Graph g = hcomp::gen_gnp(n, d / static_cast<double>(n), seed);
  const auto part = hcomp::strong_core(g);
  const auto comps = hcomp::ab_components(g, part);
  std::cout << "n=" << g.n() << " m=" << g.m() << " |A|=" << part.A.size() << " |B|=" << part.B.size()
            << " |C|=" << part.C.size() << " components=" << comps.size() << " S=" << hcomp::count_S(comps) << '\n';

  const auto motifs = hcomp::count_motifs(g);
  std::cout << "n0=" << motifs.n[0] << " n1=" << motifs.n[1] << " s3=" << motifs.s3 << '\n';

  try {
    const auto mp = hcomp::mu_prime_of(comps);
    std::cout << "a=" << mp.a_total << " mu'=" << mp.mu_prime << '\n';
    const auto cert = hcomp::build_completion(g, part, comps, {});
    std::cout << "completion: " << hcomp::to_string(cert.status);
    if (!cert.reason.empty()) std::cout << " (" << cert.reason << ')';
    std::cout << '\n';
    if (cert.success()) {
      std::cout << "added edges:";
      for (const auto& e : cert.F()) std::cout << ' ' << e.u << '-' << e.v;
      std::cout << "\nverified: " << (hcomp::verify_certificate(g, cert) ? "yes" : "no") << '\n';
    }
  } catch (const hcomp::CapacityError& e) {
    std::cout << "capacity: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
