#include "cellflow/spectral_solver.hpp"

#include <fftw3.h>

#include <cmath>
#include <cstdio>
#include <cstring>
#include <ostream>
#include <string>

#include "cellflow/errors.hpp"

namespace cellflow {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int signed_index(int m, int n) { return (m <= n / 2) ? m : m - n; }

}  // namespace

void SolverConfig::validate() const {
  if (N < 8 || N % 2 != 0) throw ConfigError("solver.N must be even and >= 8");
  if (!(L > 0.0)) throw ConfigError("solver.L must be > 0");
  if (!(dt > 0.0)) throw ConfigError("solver.dt must be > 0");
  if (!(nu >= 0.0)) throw ConfigError("solver.nu must be >= 0");
}

SpectralSolver::SpectralSolver(SolverConfig config) : cfg_(config) {
  cfg_.validate();
  const int n = cfg_.N;
  const std::size_t nn = static_cast<std::size_t>(n) * n;
  const double k0 = kTwoPi / cfg_.L;

  kx_.resize(nn);
  ky_.resize(nn);
  k2_.resize(nn);
  if_half_.resize(nn);
  if_full_.resize(nn);
  keep_.resize(nn);
  const int cutoff = n / 3;  // 2/3 rule: keep |m| <= N/3
  for (int ix = 0; ix < n; ++ix) {
    const int mx = signed_index(ix, n);
    for (int iy = 0; iy < n; ++iy) {
      const int my = signed_index(iy, n);
      const std::size_t m = static_cast<std::size_t>(ix) * n + iy;
      // Nyquist mode carries no usable sign information for first derivatives.
      kx_[m] = (ix == n / 2) ? 0.0 : mx * k0;
      ky_[m] = (iy == n / 2) ? 0.0 : my * k0;
      k2_[m] = (static_cast<double>(mx) * mx + static_cast<double>(my) * my) * k0 * k0;
      if_half_[m] = std::exp(-cfg_.nu * k2_[m] * cfg_.dt / 2.0);
      if_full_[m] = if_half_[m] * if_half_[m];
      keep_[m] = (std::abs(mx) <= cutoff && std::abs(my) <= cutoff) ? 1 : 0;
    }
  }

  buf_in_.resize(nn);
  buf_out_.resize(nn);
  u_.resize(nn);
  v_.resize(nn);
  wx_.resize(nn);
  wy_.resize(nn);
  prod_.resize(nn);
  psi_u_.resize(nn);
  psi_v_.resize(nn);
  wkx_.resize(nn);
  wky_.resize(nn);
  na_.resize(nn);
  nb_.resize(nn);
  nc_.resize(nn);
  nd_.resize(nn);
  arg_.resize(nn);

  auto* in = reinterpret_cast<fftw_complex*>(buf_in_.data());
  auto* out = reinterpret_cast<fftw_complex*>(buf_out_.data());
  // FFTW_ESTIMATE: deterministic plan choice, arrays untouched by planning.
  plan_fwd_ = fftw_plan_dft_2d(n, n, in, out, FFTW_FORWARD, FFTW_ESTIMATE);
  plan_bwd_ = fftw_plan_dft_2d(n, n, in, out, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (plan_fwd_ == nullptr || plan_bwd_ == nullptr) {
    throw NumericalError("FFTW plan creation failed");
  }
}

SpectralSolver::~SpectralSolver() {
  if (plan_fwd_ != nullptr) fftw_destroy_plan(plan_fwd_);
  if (plan_bwd_ != nullptr) fftw_destroy_plan(plan_bwd_);
}

void SpectralSolver::forward(const std::vector<Complex>& phys, std::vector<Complex>& spec) {
  std::memcpy(buf_in_.data(), phys.data(), phys.size() * sizeof(Complex));
  fftw_execute(plan_fwd_);
  spec.assign(buf_out_.begin(), buf_out_.end());
}

void SpectralSolver::inverse_real(const std::vector<Complex>& spec, std::vector<double>& phys) {
  std::memcpy(buf_in_.data(), spec.data(), spec.size() * sizeof(Complex));
  fftw_execute(plan_bwd_);
  const double scale = 1.0 / (static_cast<double>(cfg_.N) * cfg_.N);
  phys.resize(spec.size());
  for (std::size_t m = 0; m < spec.size(); ++m) phys[m] = buf_out_[m].real() * scale;
}

void SpectralSolver::check_domain(const TaylorGreenField& field) const {
  const double cells = field.k * cfg_.L / kTwoPi;
  if (std::abs(cells - std::round(cells)) > 1e-9 || std::round(cells) < 1.0) {
    throw ConfigError("field wavenumber is not periodic on the solver domain (k*L/2pi = " +
                      std::to_string(cells) + ")");
  }
}

void SpectralSolver::check_cfl(const SpectralState& state) {
  std::vector<double> u, v;
  velocity_on_grid(state, u, v);
  double max_speed = 0.0;
  for (std::size_t m = 0; m < u.size(); ++m) {
    max_speed = std::max(max_speed, std::hypot(u[m], v[m]));
  }
  const double cfl = cfg_.dt * max_speed * cfg_.N / cfg_.L;
  if (cfl > 0.5) {
    const std::string msg = "CFL number " + std::to_string(cfl) + " exceeds 0.5 at initialization";
    if (cfg_.cfl_strict) throw NumericalError(msg);
    std::fprintf(stderr, "cellflow: warning: %s\n", msg.c_str());
  }
}

SpectralState SpectralSolver::from_physical(const std::vector<double>& omega_phys) {
  const std::size_t nn = buf_in_.size();
  for (std::size_t m = 0; m < nn; ++m) prod_[m] = Complex(omega_phys[m], 0.0);
  SpectralState state;
  state.N = cfg_.N;
  forward(prod_, state.omega_hat);
  state.omega_hat[0] = Complex(0.0, 0.0);  // circulation-free
  return state;
}

SpectralState SpectralSolver::init_from_field(const TaylorGreenField& field) {
  check_domain(field);
  const int n = cfg_.N;
  std::vector<double> w(static_cast<std::size_t>(n) * n);
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      w[static_cast<std::size_t>(ix) * n + iy] = field.vorticity(node(ix), node(iy), 0.0);
    }
  }
  SpectralState state = from_physical(w);
  check_cfl(state);
  return state;
}

SpectralState SpectralSolver::init_from_vorticity(
    const std::function<double(double, double)>& omega0) {
  const int n = cfg_.N;
  std::vector<double> w(static_cast<std::size_t>(n) * n);
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      w[static_cast<std::size_t>(ix) * n + iy] = omega0(node(ix), node(iy));
    }
  }
  SpectralState state = from_physical(w);
  check_cfl(state);
  return state;
}

void SpectralSolver::nonlinear(const std::vector<Complex>& omega_hat, std::vector<Complex>& out) {
  const std::size_t nn = omega_hat.size();
  const Complex i_unit(0.0, 1.0);
  for (std::size_t m = 0; m < nn; ++m) {
    const Complex w = omega_hat[m];
    const Complex psi = (k2_[m] > 0.0) ? w / k2_[m] : Complex(0.0, 0.0);
    psi_u_[m] = i_unit * ky_[m] * psi;    // u_hat
    psi_v_[m] = -i_unit * kx_[m] * psi;   // v_hat
    wkx_[m] = i_unit * kx_[m] * w;        // d(omega)/dx
    wky_[m] = i_unit * ky_[m] * w;        // d(omega)/dy
  }
  inverse_real(psi_u_, u_);
  inverse_real(psi_v_, v_);
  inverse_real(wkx_, wx_);
  inverse_real(wky_, wy_);
  for (std::size_t m = 0; m < nn; ++m) {
    prod_[m] = Complex(u_[m] * wx_[m] + v_[m] * wy_[m], 0.0);
  }
  forward(prod_, out);
  for (std::size_t m = 0; m < nn; ++m) {
    out[m] = -out[m];
    if (cfg_.dealias && keep_[m] == 0) out[m] = Complex(0.0, 0.0);
  }
  out[0] = Complex(0.0, 0.0);  // advection conserves mean vorticity
}

void SpectralSolver::step(SpectralState& state) {
  if (state.N != cfg_.N || state.omega_hat.size() != k2_.size()) {
    throw ConfigError("spectral state does not match solver resolution");
  }
  const std::size_t nn = state.omega_hat.size();
  const double h = cfg_.dt;
  std::vector<Complex>& w = state.omega_hat;

  nonlinear(w, na_);
  for (std::size_t m = 0; m < nn; ++m) arg_[m] = if_half_[m] * (w[m] + 0.5 * h * na_[m]);
  nonlinear(arg_, nb_);
  for (std::size_t m = 0; m < nn; ++m) arg_[m] = if_half_[m] * w[m] + 0.5 * h * nb_[m];
  nonlinear(arg_, nc_);
  for (std::size_t m = 0; m < nn; ++m) arg_[m] = if_full_[m] * w[m] + h * if_half_[m] * nc_[m];
  nonlinear(arg_, nd_);

  double checksum = 0.0;  // NaN/inf propagate through the sum
  for (std::size_t m = 0; m < nn; ++m) {
    w[m] = if_full_[m] * w[m] +
           h / 6.0 * (if_full_[m] * na_[m] + 2.0 * if_half_[m] * (nb_[m] + nc_[m]) + nd_[m]);
    checksum += std::abs(w[m].real()) + std::abs(w[m].imag());
  }
  w[0] = Complex(0.0, 0.0);
  state.steps += 1;
  state.t = static_cast<double>(state.steps) * h;
  if (!std::isfinite(checksum)) {
    throw NumericalError("solver diverged (non-finite vorticity) at step " +
                         std::to_string(state.steps));
  }
}

void SpectralSolver::advance(SpectralState& state, int n_steps) {
  for (int i = 0; i < n_steps; ++i) step(state);
}

std::vector<double> SpectralSolver::vorticity_grid(const SpectralState& state) {
  std::vector<double> w;
  inverse_real(state.omega_hat, w);
  return w;
}

void SpectralSolver::velocity_on_grid(const SpectralState& state, std::vector<double>& u,
                                      std::vector<double>& v) {
  const std::size_t nn = state.omega_hat.size();
  const Complex i_unit(0.0, 1.0);
  for (std::size_t m = 0; m < nn; ++m) {
    const Complex psi = (k2_[m] > 0.0) ? state.omega_hat[m] / k2_[m] : Complex(0.0, 0.0);
    psi_u_[m] = i_unit * ky_[m] * psi;
    psi_v_[m] = -i_unit * kx_[m] * psi;
  }
  inverse_real(psi_u_, u);
  inverse_real(psi_v_, v);
}

double SpectralSolver::energy(const SpectralState& state) const {
  // Parseval: integral |u|^2 dA = (L^2 / N^4) sum (kx^2 + ky^2) |psi_hat|^2.
  const std::size_t nn = state.omega_hat.size();
  double sum = 0.0;
  for (std::size_t m = 0; m < nn; ++m) {
    if (k2_[m] <= 0.0) continue;
    const double psi2 = std::norm(state.omega_hat[m]) / (k2_[m] * k2_[m]);
    sum += (kx_[m] * kx_[m] + ky_[m] * ky_[m]) * psi2;
  }
  const double n2 = static_cast<double>(cfg_.N) * cfg_.N;
  return 0.5 * cfg_.L * cfg_.L * sum / (n2 * n2);
}

double SpectralSolver::enstrophy(const SpectralState& state) const {
  const std::size_t nn = state.omega_hat.size();
  double sum = 0.0;
  for (std::size_t m = 0; m < nn; ++m) sum += std::norm(state.omega_hat[m]);
  const double n2 = static_cast<double>(cfg_.N) * cfg_.N;
  return 0.5 * cfg_.L * cfg_.L * sum / (n2 * n2);
}

double SpectralSolver::divergence_max(const SpectralState& state) {
  const std::size_t nn = state.omega_hat.size();
  const Complex i_unit(0.0, 1.0);
  for (std::size_t m = 0; m < nn; ++m) {
    const Complex psi = (k2_[m] > 0.0) ? state.omega_hat[m] / k2_[m] : Complex(0.0, 0.0);
    const Complex u_hat = i_unit * ky_[m] * psi;
    const Complex v_hat = -i_unit * kx_[m] * psi;
    wkx_[m] = i_unit * kx_[m] * u_hat + i_unit * ky_[m] * v_hat;
  }
  std::vector<double> div;
  inverse_real(wkx_, div);
  double max_abs = 0.0;
  for (double d : div) max_abs = std::max(max_abs, std::abs(d));
  return max_abs;
}

double SpectralSolver::max_imag_physical(const SpectralState& state) {
  std::memcpy(buf_in_.data(), state.omega_hat.data(), state.omega_hat.size() * sizeof(Complex));
  fftw_execute(plan_bwd_);
  const double scale = 1.0 / (static_cast<double>(cfg_.N) * cfg_.N);
  double max_imag = 0.0;
  for (const Complex& c : buf_out_) max_imag = std::max(max_imag, std::abs(c.imag() * scale));
  return max_imag;
}

ErrorReport SpectralSolver::compare_to_analytic(const SpectralState& state,
                                                const TaylorGreenField& field) {
  check_domain(field);
  const std::vector<double> w = vorticity_grid(state);
  const int n = cfg_.N;
  ErrorReport report;
  double sum_diff2 = 0.0;
  double sum_exact2 = 0.0;
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      const double exact = field.vorticity(node(ix), node(iy), state.t);
      const double diff = w[static_cast<std::size_t>(ix) * n + iy] - exact;
      report.max_error = std::max(report.max_error, std::abs(diff));
      sum_diff2 += diff * diff;
      sum_exact2 += exact * exact;
    }
  }
  report.l2_error =
      (sum_exact2 > 0.0) ? std::sqrt(sum_diff2 / sum_exact2) : std::sqrt(sum_diff2);
  return report;
}

void write_snapshot_csv(std::ostream& out, SpectralSolver& solver, const SpectralState& state) {
  const int n = solver.config().N;
  const std::vector<double> w = solver.vorticity_grid(state);
  char buf[64];
  std::snprintf(buf, sizeof(buf), "# t=%.17g N=%d L=%.17g", state.t, n, solver.config().L);
  out << buf << "\n";
  for (int ix = 0; ix < n; ++ix) {
    for (int iy = 0; iy < n; ++iy) {
      std::snprintf(buf, sizeof(buf), "%.17g", w[static_cast<std::size_t>(ix) * n + iy]);
      out << buf << (iy + 1 == n ? "" : ",");
    }
    out << "\n";
  }
}

}  // namespace cellflow
