#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <numbers>
#include <vector>

#include "cellflow/flow_field.hpp"

// FFTW types are kept out of this header.
struct fftw_plan_s;

namespace cellflow {

struct SolverConfig {
  int N = 64;                        // grid points per side (even, >= 8)
  double L = 4.0 * std::numbers::pi; // domain side length
  double nu = 1e-2;                  // viscosity
  double dt = 1e-2;                  // time step
  bool dealias = true;               // 2/3-rule truncation of the nonlinear product
  bool cfl_strict = true;            // CFL violation at init: throw (true) or warn (false)

  void validate() const;
};

/** Fourier-space vorticity. Coefficients follow the unnormalized forward-DFT
 *  convention, row-major with index ix*N + iy. t tracks steps * dt exactly. */
struct SpectralState {
  int N = 0;
  std::vector<std::complex<double>> omega_hat;
  double t = 0.0;
  std::int64_t steps = 0;
};

struct ErrorReport {
  double max_error = 0.0;  // max pointwise |omega - omega_exact|
  double l2_error = 0.0;   // ||omega - omega_exact||_2 / ||omega_exact||_2
};

/**
 * 2D incompressible Navier-Stokes on a periodic square, vorticity-
 * streamfunction form, Fourier pseudo-spectral in space:
 *
 *   d(omega)/dt + u . grad(omega) = nu laplacian(omega),  u = curl(psi),
 *   -laplacian(psi) = omega.
 *
 * Time stepping is classical RK4 on the advection term with the diffusion
 * term absorbed exactly by a per-mode integrating factor, so flows whose
 * advection term vanishes are integrated exactly in time. The flow is kept
 * circulation-free: the mean vorticity mode is pinned to zero.
 *
 * A solver instance owns FFTW plans and scratch buffers; use it from one
 * thread at a time. Distinct instances are independent.
 */
class SpectralSolver {
 public:
  explicit SpectralSolver(SolverConfig config);
  ~SpectralSolver();
  SpectralSolver(const SpectralSolver&) = delete;
  SpectralSolver& operator=(const SpectralSolver&) = delete;

  const SolverConfig& config() const { return cfg_; }

  /** Grid node coordinate (same spacing in x and y). */
  double node(int i) const { return cfg_.L * i / cfg_.N; }

  /** Spectral state sampling `field` at t = 0. The field must be periodic on
   *  the solver domain (k L a multiple of 2 pi). */
  SpectralState init_from_field(const TaylorGreenField& field);

  /** Spectral state from an arbitrary smooth vorticity function (mean part is
   *  removed). */
  SpectralState init_from_vorticity(const std::function<double(double, double)>& omega0);

  /** Advance one dt in place. Throws NumericalError on divergence. */
  void step(SpectralState& state);

  void advance(SpectralState& state, int n_steps);

  /** Physical-space vorticity, row-major ix*N + iy. */
  std::vector<double> vorticity_grid(const SpectralState& state);

  /** Velocity reconstructed from the streamfunction, divergence-free by construction. */
  void velocity_on_grid(const SpectralState& state, std::vector<double>& u, std::vector<double>& v);

  /** 1/2 integral of |u|^2 over the domain (spectral quadrature). */
  double energy(const SpectralState& state) const;

  /** 1/2 integral of omega^2 over the domain (spectral quadrature). */
  double enstrophy(const SpectralState& state) const;

  /** Max-norm of the spectral divergence of the reconstructed velocity. */
  double divergence_max(const SpectralState& state);

  /** Largest imaginary part left by the inverse transform; reality diagnostic. */
  double max_imag_physical(const SpectralState& state);

  /** Pointwise and relative-L2 vorticity error against the closed form at state.t. */
  ErrorReport compare_to_analytic(const SpectralState& state, const TaylorGreenField& field);

 private:
  using Complex = std::complex<double>;

  void check_domain(const TaylorGreenField& field) const;
  void check_cfl(const SpectralState& state);
  SpectralState from_physical(const std::vector<double>& omega_phys);

  // u.grad(omega) in spectral space, negated, dealiased, zero-mean.
  void nonlinear(const std::vector<Complex>& omega_hat, std::vector<Complex>& out);

  void forward(const std::vector<Complex>& phys, std::vector<Complex>& spec);
  void inverse_real(const std::vector<Complex>& spec, std::vector<double>& phys);

  SolverConfig cfg_;
  std::vector<double> kx_, ky_;    // derivative wavenumbers (Nyquist zeroed)
  std::vector<double> k2_;         // |k|^2 per mode
  std::vector<double> if_half_, if_full_;  // integrating factors exp(-nu |k|^2 dt/2), dt
  std::vector<unsigned char> keep_;        // dealias mask

  fftw_plan_s* plan_fwd_ = nullptr;
  fftw_plan_s* plan_bwd_ = nullptr;
  std::vector<Complex> buf_in_, buf_out_;
  std::vector<double> u_, v_, wx_, wy_;
  std::vector<Complex> prod_, psi_u_, psi_v_, wkx_, wky_;
  std::vector<Complex> na_, nb_, nc_, nd_, arg_;
};

/** Snapshot export: physical-space vorticity as a CSV grid, row-major, with
 *  header line `# t=<time> N=<N> L=<L>`. */
void write_snapshot_csv(std::ostream& out, SpectralSolver& solver, const SpectralState& state);

}  // namespace cellflow
