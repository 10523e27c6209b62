// SPDX-License-Identifier: Apache-2.0
//
// ulasim - link-level simulator for a high-mobility OFDM uplink with a large
// uniform linear transmit array
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#ifndef ULASIM_ANALYSIS_HPP
#define ULASIM_ANALYSIS_HPP

#include <complex>
#include <ostream>
#include <vector>

namespace ulasim
{

// Parameter point for the spectral analysis of the beam-grid equivalent
// channel: array size M, element spacing in wavelengths, peak Doppler in
// rad/s.
struct ConfigPoint
{
    int n_tx = 0;
    double spacing_wavelengths = 0.0;
    double omega_d = 0.0;
};

// Array gain between a beam direction theta and a departure direction
// theta_tilde: sin(pi M r y) / (M sin(pi r y)), y = cos(theta_tilde) -
// cos(theta), r the spacing in wavelengths; 1 at y = 0 (limit).
double gain(double theta, double theta_tilde, int m, double spacing_wavelengths);

// Autocorrelation of the equivalent channel at lag tau:
//   R(tau) = 2/pi * int_0^pi int_0^pi |G(theta, theta~)|^2
//            exp(-j omega_d tau (cos theta~ - cos theta)) dtheta~ dtheta,
// evaluated by a tensor-product midpoint rule, refined from n_start points
// per axis until the relative change is below rel_tol (default 1e-4).
// Throws QuadratureNotConverged when the cap is hit first.
std::complex<double> autocorrelation(double tau, const ConfigPoint &pt,
                                     double rel_tol = 1e-4, int n_start = 2048,
                                     int n_max = 8192);

// Same integral for several lags at once (the gain factor is shared).
std::vector<std::complex<double>> autocorrelation_batch(const std::vector<double> &taus,
                                                        const ConfigPoint &pt,
                                                        double rel_tol = 1e-4,
                                                        int n_start = 2048,
                                                        int n_max = 8192);

// Exact closed evaluation of the same double integral,
//   R(tau) = (2 pi / M^2) sum_{k=1-M}^{M-1} (M-|k|) J0(omega_d tau - 2 pi k r)^2,
// obtained from the Fejer expansion of |G|^2 and the Bessel integral of the
// exponential kernel. Used as the fast path of the transform pipeline and
// cross-checked against the quadrature in the tests.
double autocorrelation_series(double tau, const ConfigPoint &pt);

// One sidelobe term of the closed-form spectrum: gate center w_center (rad/s),
// level d_coef, and the angular integral c_integral (seconds).
struct SidelobeTerm
{
    int index = 0;
    double d_coef = 0.0;
    double w_center = 0.0;
    double c_integral = 0.0;
};

// Constants of the piecewise closed-form PSD model of the equivalent channel.
// All quantities follow the closed-form model: an impulse of mass c0 at
// omega = 0, a baseband gate of half-width w0 with density
// 2 c1 (1 + cos(omega t0)), and per-sidelobe gates of half-width w_bar0
// centered at -w_center with density 2 d_coef c_integral (1 + cos 2(omega +
// w_center) t0).
struct SpectralConstants
{
    int m = 0;
    double spacing_wavelengths = 0.0;
    double omega_d = 0.0;

    double c0 = 0.0;        // impulse mass at omega = 0
    double c1 = 0.0;        // baseband density scale, seconds
    double t0 = 0.0;        // oscillation time constant, seconds
    double theta0 = 0.0;    // main-beam edge angle, radians
    double delta_m = 0.0;   // main-beam width parameter, radians
    double theta_bar0 = 0.0; // sidelobe edge angle, radians
    double w0 = 0.0;        // baseband gate half-width, rad/s
    double w_bar0 = 0.0;    // sidelobe gate half-width, rad/s
    int i_min = 0;
    int i_max = 0;
    std::vector<SidelobeTerm> sidelobes; // indices i_min..i_max without -1, 0
};

// Evaluates every constant of the closed-form model. The sidelobe integrals
// have an integrable 1/sqrt endpoint singularity that is removed by the
// substitution u = sqrt(distance to the singular endpoint) before midpoint
// refinement. Throws DomainError if an inverse-trig argument falls outside
// [-1, 1] by more than 1e-12 (arguments within tolerance are clamped), and
// QuadratureNotConverged if a sidelobe integral fails to settle.
SpectralConstants spectral_constants(int m, double spacing_wavelengths, double omega_d);

// Continuous part of the closed-form PSD on the given grid. The impulse mass
// c0 is never folded into a density sample; it is carried separately.
std::vector<double> psd_closed_form(const SpectralConstants &constants,
                                    const std::vector<double> &omega_grid);

// RMS spectral width sqrt(int w^2 P dw / int P dw) by trapezoidal quadrature
// over the given grid, plus an optional discrete impulse mass at omega = 0
// (denominator only). Throws ZeroTotalPower when the denominator underflows.
double doppler_spread_numerical(const std::vector<double> &psd,
                                const std::vector<double> &omega_grid,
                                double impulse_mass_at_zero = 0.0);

// Closed-form Doppler spread sqrt(Gamma / Lambda) from the model constants.
// Throws NegativeVariance if Gamma < 0 (a constants bug, never clamped).
double doppler_spread_closed_form(const SpectralConstants &constants);

// Doppler spread of the classical dense-scattering reference.
inline double sigma_jakes(double omega_d) { return omega_d * 0.7071067811865475244; }

// Dense PSD curve from the definition pipeline: autocorrelation sampled on a
// uniform lag grid (closed series evaluation), raised-cosine tapered over the
// last 10% of the record, transformed by FFT. `omega` is symmetric about 0
// and spans at least [-2.2 wd, 2.2 wd]; `r0` is the lag-0 autocorrelation.
struct PsdCurve
{
    std::vector<double> omega;
    std::vector<double> psd;
    double r0 = 0.0;
};

PsdCurve psd_pipeline(const ConfigPoint &pt);

// Same transform applied to the dense-scattering reference autocorrelation
// J0(omega_d tau); sanity anchor for the pipeline (spread omega_d/sqrt(2)).
PsdCurve psd_pipeline_jakes(double omega_d);

// Definition-based PSD interpolated onto a caller grid (linear interpolation
// of the dense pipeline curve; zero outside its span).
std::vector<double> psd_numerical(const ConfigPoint &pt,
                                  const std::vector<double> &omega_grid);

// Bundle of both spectra and the three spread figures for one point.
struct SpectrumReport
{
    ConfigPoint point;
    std::vector<double> omega_grid;
    std::vector<double> psd_numerical;
    std::vector<double> psd_closed_form;
    double impulse_mass = 0.0;
    double sigma_ds_numerical = 0.0;
    double sigma_ds_closed_form = 0.0;
    double sigma_jakes = 0.0;
};

SpectrumReport make_spectrum_report(const ConfigPoint &pt);

// CSV: leading `#` header rows carry the spread figures and the impulse
// mass, then omega_rad_s,psd_numerical,psd_closed_form rows.
void write_spectrum_csv(const SpectrumReport &report, std::ostream &out);

} // namespace ulasim

#endif
