#include "aperispec/bounds.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "aperispec/errors.hpp"
#include "aperispec/symbolic_ops.hpp"

namespace aperispec {

double cdl_constant(const PartitionConstants& pc, const Lattice& lat) {
  return 16.0 * static_cast<double>(pc.Noverlap) * std::max({lat.distortion(), pc.C_L, 1.0});
}

namespace {

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_distance(double d_sub) {
  if (!(d_sub >= 0.0 && d_sub <= 1.0)) throw DomainError("subshift distance must lie in [0,1]");
}

BoundCertificate base_certificate(const Hamiltonian& H, double d_sub, const PartitionConstants& pc, bool flag,
                                  const std::string& inputs) {
  check_distance(d_sub);
  BoundCertificate c;
  c.constants.C_L = pc.C_L;
  c.constants.Noverlap = pc.Noverlap;
  c.constants.C_dL = cdl_constant(pc, H.lattice());
  c.constants.C_hop = H.C_hop();
  c.constants.schur_beta = schur_norm(H);
  c.constants.R_H = H.R_H();
  c.constants.beta = H.beta();
  c.d_subshift = d_sub;
  c.d_lower_bound = flag;
  c.fallback = 2.0 * c.constants.schur_beta;
  c.partition = pc.description + (pc.analytic ? "; C_L analytic" : "; C_L grid-sampled step " + num(pc.grid_step) + " inflated");
  c.feasibility_convention = kFeasibilityConvention;
  c.inputs = inputs;
  return c;
}

void finish(BoundCertificate& c) {
  c.effective = std::min(c.bound, c.fallback);
  c.digest = fnv1a_hex(certificate_canonical_text(c));
}

}  // namespace

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 14695981039346656037ULL;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string certificate_canonical_text(const BoundCertificate& c) {
  std::ostringstream os;
  os << "theorem=" << c.theorem << ";C_L=" << num(c.constants.C_L) << ";Noverlap=" << c.constants.Noverlap
     << ";C_dL=" << num(c.constants.C_dL) << ";C_hop=" << num(c.constants.C_hop)
     << ";schur_beta=" << num(c.constants.schur_beta) << ";R_H=" << num(c.constants.R_H)
     << ";beta=" << num(c.constants.beta) << ";C_H=" << (c.constants.C_H ? num(*c.constants.C_H) : "none")
     << ";d_subshift=" << num(c.d_subshift) << ";d_lower_bound=" << (c.d_lower_bound ? 1 : 0)
     << ";bound=" << num(c.bound) << ";fallback=" << num(c.fallback) << ";effective=" << num(c.effective)
     << ";partition=" << c.partition << ";feasibility=" << c.feasibility_convention << ";inputs=" << c.inputs;
  return os.str();
}

BoundCertificate finite_range_bound(const Hamiltonian& H, double d_sub, const PartitionConstants& pc, bool d_lower_bound,
                                    const std::string& inputs) {
  BoundCertificate c = base_certificate(H, d_sub, pc, d_lower_bound, inputs);
  c.theorem = "finite-range";
  const double b = H.beta();
  c.bound = c.constants.C_dL * c.constants.C_hop * c.constants.schur_beta * std::pow(c.constants.R_H, b) *
            std::pow(d_sub, b);
  finish(c);
  return c;
}

BoundCertificate infinite_range_bound(const Hamiltonian& H, double C_H, double d_sub, const PartitionConstants& pc,
                                      bool d_lower_bound, const std::string& inputs, std::vector<double> radii) {
  if (!(C_H >= 1.0) || !std::isfinite(C_H)) throw DomainError("linear growth constant C_H must be >= 1");
  if (radii.empty())
    for (std::int64_t s = 1; s <= H.max_hop() + 1; ++s) radii.push_back(static_cast<double>(s));
  for (double s : radii) {
    const double R = truncate_range(H, s).R_H();
    if (R > C_H * s)
      throw CertificateRefusedError("declared growth R_{H|s} <= C_H s fails at s = " + num(s) + " (R_{H|s} = " + num(R) +
                                    ", C_H s = " + num(C_H * s) + ")");
  }
  BoundCertificate c = base_certificate(H, d_sub, pc, d_lower_bound, inputs);
  c.theorem = "infinite-range";
  c.constants.C_H = C_H;
  const double b = H.beta();
  c.bound = 2.0 * c.constants.C_dL * c.constants.schur_beta * (std::pow(C_H, b) + c.constants.C_hop) * std::pow(d_sub, b);
  finish(c);
  return c;
}

double resolvent_gap_threshold(const Hamiltonian& H, double r, const PartitionConstants& pc, const Lattice& lat) {
  const double R_tilde = H.R_H() + lat.distortion() + 1.0;
  if (!(r > R_tilde)) throw DomainError("resolvent threshold needs r > R~ = " + num(R_tilde));
  const double b = H.beta();
  return 16.0 * static_cast<double>(pc.Noverlap) * std::max(pc.C_L, 1.0) / (std::pow(2.0, b) * std::pow(r - R_tilde, b)) *
         H.C_hop() * schur_norm(H);
}

double norm_fallback_bound(const Hamiltonian& H) { return 2.0 * schur_norm(H); }

BoundCertificate norm_fallback_certificate(const Hamiltonian& H, double d_sub, const PartitionConstants& pc,
                                           bool d_lower_bound, const std::string& inputs) {
  BoundCertificate c = base_certificate(H, d_sub, pc, d_lower_bound, inputs);
  c.theorem = "norm-fallback";
  c.bound = c.fallback;
  finish(c);
  return c;
}

}  // namespace aperispec
