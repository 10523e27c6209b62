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

#include "ulasim/analysis.hpp"

#include "ulasim/errors.hpp"
#include "ulasim/util.hpp"

#include <unsupported/Eigen/FFT>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numbers>

namespace ulasim
{

namespace
{

constexpr double k_pi = std::numbers::pi;

double checked_acos(double x)
{
    if (x > 1.0 || x < -1.0)
    {
        if (std::abs(x) - 1.0 > 1e-12)
            throw DomainError("arc cosine argument outside [-1, 1]");
        x = std::clamp(x, -1.0, 1.0);
    }
    return std::acos(x);
}

double checked_asin(double x)
{
    if (x > 1.0 || x < -1.0)
    {
        if (std::abs(x) - 1.0 > 1e-12)
            throw DomainError("arc sine argument outside [-1, 1]");
        x = std::clamp(x, -1.0, 1.0);
    }
    return std::asin(x);
}

double bessel_j0(double x) { return std::cyl_bessel_j(0.0, std::abs(x)); }

// Integral of 1 / sqrt(1 - (cos(theta) - s)^2) over [lo, hi] with an
// integrable inverse-square-root singularity at one endpoint. The
// substitution theta = endpoint -/+ v^2 removes it; the smooth result is
// integrated by a midpoint rule refined until the relative change settles.
double cbar_angle_integral(double lo, double hi, double s, bool singular_at_hi)
{
    if (!(hi > lo))
        return 0.0;
    const double vmax = std::sqrt(hi - lo);
    auto eval = [&](int n) {
        const double h = vmax / n;
        double acc = 0.0;
        for (int k = 0; k < n; ++k)
        {
            const double v = (k + 0.5) * h;
            const double theta = singular_at_hi ? hi - v * v : lo + v * v;
            const double c = std::cos(theta) - s;
            const double q = std::max(1.0 - c * c, 1e-300);
            acc += 2.0 * v / std::sqrt(q);
        }
        return acc * h;
    };
    double prev = eval(128);
    for (int n = 256; n <= (1 << 19); n *= 2)
    {
        const double cur = eval(n);
        if (std::abs(cur - prev) <= 1e-8 * std::max(std::abs(cur), 1e-300))
            return cur;
        prev = cur;
    }
    throw QuadratureNotConverged("sidelobe angular integral did not settle");
}

std::size_t next_pow2(std::size_t n)
{
    std::size_t p = 1;
    while (p < n)
        p <<= 1;
    return p;
}

// Shared tail of the two pipelines: raised-cosine taper over the last 10% of
// the lag record, even extension, FFT, and a symmetric grid out to
// 2.2 * omega_d (trapezoidal spectral estimate of 2 * int_0^inf R cos).
PsdCurve transform_lag_record(std::vector<double> lag_record, double dtau,
                              double omega_d, double min_resolution)
{
    const std::size_t n = lag_record.size();
    PsdCurve curve;
    curve.r0 = lag_record[0];

    const std::size_t ntap = std::max<std::size_t>(1, n / 10);
    for (std::size_t i = 0; i < ntap; ++i)
    {
        const double w = 0.5 * (1.0 + std::cos(k_pi * double(i + 1) / double(ntap)));
        lag_record[n - ntap + i] *= w;
    }

    const std::size_t by_resolution =
        std::size_t(std::ceil(2.0 * k_pi / (min_resolution * dtau)));
    const std::size_t nfft = next_pow2(std::max(2 * n, by_resolution));

    std::vector<double> buf(nfft, 0.0);
    buf[0] = lag_record[0];
    for (std::size_t k = 1; k < n; ++k)
    {
        buf[k] = lag_record[k];
        buf[nfft - k] = lag_record[k];
    }

    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> freq;
    fft.fwd(freq, buf);

    const double domega = 2.0 * k_pi / (double(nfft) * dtau);
    const std::size_t jmax =
        std::min(freq.size() - 1, std::size_t(std::ceil(2.2 * omega_d / domega)));

    curve.omega.resize(2 * jmax + 1);
    curve.psd.resize(2 * jmax + 1);
    for (std::size_t j = 0; j <= 2 * jmax; ++j)
    {
        const std::ptrdiff_t idx = std::ptrdiff_t(j) - std::ptrdiff_t(jmax);
        curve.omega[j] = double(idx) * domega;
        curve.psd[j] = freq[std::size_t(idx < 0 ? -idx : idx)].real() * dtau;
    }
    return curve;
}

void require_point(const ConfigPoint &pt)
{
    if (pt.n_tx < 1)
        throw DomainError("array size must be at least 1");
    if (!(pt.spacing_wavelengths > 0.0))
        throw DomainError("element spacing must be positive");
    if (!(pt.omega_d > 0.0))
        throw DomainError("peak Doppler must be positive");
}

} // namespace

double gain(double theta, double theta_tilde, int m, double spacing_wavelengths)
{
    const double y = std::cos(theta_tilde) - std::cos(theta);
    const double x = k_pi * spacing_wavelengths * y;
    if (std::abs(x) < 1e-7)
        return 1.0 - (double(m) * m - 1.0) * x * x / 6.0;
    return std::sin(m * x) / (m * std::sin(x));
}

std::vector<std::complex<double>> autocorrelation_batch(const std::vector<double> &taus,
                                                        const ConfigPoint &pt,
                                                        double rel_tol, int n_start,
                                                        int n_max)
{
    require_point(pt);
    if (taus.empty())
        return {};

    const std::size_t ntau = taus.size();
    auto eval_level = [&](int n, std::vector<std::complex<double>> &out, double &r0) {
        const double h = k_pi / n;
        // Unit-modulus kernel factors exp(-j omega_d tau cos(theta_b)) for
        // every lag; the same gain row then serves all lags at once.
        std::vector<std::complex<double>> phases(std::size_t(n) * ntau);
        std::vector<double> cosines(static_cast<std::size_t>(n));
        for (int b = 0; b < n; ++b)
        {
            const double c = std::cos((b + 0.5) * h);
            cosines[std::size_t(b)] = c;
            for (std::size_t t = 0; t < ntau; ++t)
                phases[std::size_t(b) * ntau + t] =
                    std::polar(1.0, -pt.omega_d * taus[t] * c);
        }
        out.assign(ntau, {0.0, 0.0});
        r0 = 0.0;
        std::vector<std::complex<double>> inner(ntau);
        for (int a = 0; a < n; ++a)
        {
            std::fill(inner.begin(), inner.end(), std::complex<double>{0.0, 0.0});
            double inner_r0 = 0.0;
            const double ca = cosines[std::size_t(a)];
            for (int b = 0; b < n; ++b)
            {
                const double y = cosines[std::size_t(b)] - ca;
                const double x = k_pi * pt.spacing_wavelengths * y;
                double gv;
                if (std::abs(x) < 1e-7)
                    gv = 1.0 - (double(pt.n_tx) * pt.n_tx - 1.0) * x * x / 6.0;
                else
                    gv = std::sin(pt.n_tx * x) / (pt.n_tx * std::sin(x));
                const double g2 = gv * gv;
                inner_r0 += g2;
                const std::complex<double> *row = &phases[std::size_t(b) * ntau];
                for (std::size_t t = 0; t < ntau; ++t)
                    inner[t] += g2 * row[t];
            }
            r0 += inner_r0;
            for (std::size_t t = 0; t < ntau; ++t)
                out[t] += std::conj(phases[std::size_t(a) * ntau + t]) * inner[t];
        }
        const double scale = 2.0 / k_pi * h * h;
        for (auto &v : out)
            v *= scale;
        r0 *= scale;
    };

    std::vector<std::complex<double>> prev;
    double r0_prev = 0.0;
    eval_level(n_start, prev, r0_prev);
    for (int n = 2 * n_start; n <= n_max; n *= 2)
    {
        std::vector<std::complex<double>> cur;
        double r0_cur = 0.0;
        eval_level(n, cur, r0_cur);
        double worst = 0.0;
        for (std::size_t t = 0; t < ntau; ++t)
            worst = std::max(worst, std::abs(cur[t] - prev[t]));
        if (worst <= rel_tol * std::max(r0_cur, 1e-300))
            return cur;
        prev = std::move(cur);
        r0_prev = r0_cur;
    }
    throw QuadratureNotConverged("autocorrelation quadrature did not settle");
}

std::complex<double> autocorrelation(double tau, const ConfigPoint &pt, double rel_tol,
                                     int n_start, int n_max)
{
    return autocorrelation_batch({tau}, pt, rel_tol, n_start, n_max)[0];
}

double autocorrelation_series(double tau, const ConfigPoint &pt)
{
    require_point(pt);
    const int m = pt.n_tx;
    const double step = 2.0 * k_pi * pt.spacing_wavelengths;
    const double base = pt.omega_d * tau;
    double acc = double(m) * bessel_j0(base) * bessel_j0(base);
    for (int k = 1; k < m; ++k)
    {
        const double jp = bessel_j0(base - k * step);
        const double jn = bessel_j0(base + k * step);
        acc += double(m - k) * (jp * jp + jn * jn);
    }
    return 2.0 * k_pi / (double(m) * m) * acc;
}

SpectralConstants spectral_constants(int m, double spacing_wavelengths, double omega_d)
{
    require_point({m, spacing_wavelengths, omega_d});

    SpectralConstants c;
    c.m = m;
    c.spacing_wavelengths = spacing_wavelengths;
    c.omega_d = omega_d;

    const double ratio = double(m) * spacing_wavelengths; // aperture in wavelengths
    c.delta_m = checked_acos(1.0 - 1.0 / ratio);
    c.theta0 = checked_asin(1.0 / (ratio * c.delta_m));
    c.c0 = 8.0 * c.delta_m * c.theta0 / k_pi;
    c.t0 = k_pi * ratio / omega_d;
    c.c1 = -(2.0 / omega_d) * std::log(std::tan(0.5 * c.theta0));
    c.w0 = omega_d / ratio;
    c.w_bar0 = 0.5 * c.w0;

    const double half_width = checked_acos(1.0 - 0.5 / ratio);
    c.theta_bar0 = checked_asin(0.5 / (ratio * half_width));

    c.i_max = int(std::floor(2.0 * ratio - 0.5));
    c.i_min = int(std::ceil(-2.0 * ratio - 0.5));

    for (int i = c.i_min; i <= c.i_max; ++i)
    {
        if (i == 0 || i == -1)
            continue; // main beam, covered by the impulse and baseband terms
        const double s = (2.0 * i + 1.0) / (2.0 * ratio);
        const double level = 1.0 / (double(m) * std::sin((2.0 * i + 1.0) * k_pi / (2.0 * m)));
        double integral = 0.0;
        if (i >= 1)
        {
            const double hi = checked_acos(s - 1.0);
            integral = cbar_angle_integral(c.theta_bar0, hi, s, true) / omega_d;
        }
        else
        {
            const double lo = checked_acos(s + 1.0);
            integral = cbar_angle_integral(lo, k_pi - c.theta_bar0, s, false) / omega_d;
        }
        SidelobeTerm term;
        term.index = i;
        term.d_coef = level * level;
        term.w_center = s * omega_d;
        term.c_integral = integral;
        c.sidelobes.push_back(term);
    }
    return c;
}

std::vector<double> psd_closed_form(const SpectralConstants &constants,
                                    const std::vector<double> &omega_grid)
{
    std::vector<double> psd(omega_grid.size(), 0.0);
    for (std::size_t j = 0; j < omega_grid.size(); ++j)
    {
        const double w = omega_grid[j];
        double p = 0.0;
        if (std::abs(w) <= constants.w0)
            p += 2.0 * constants.c1 * (1.0 + std::cos(w * constants.t0));
        for (const SidelobeTerm &term : constants.sidelobes)
        {
            const double off = w + term.w_center;
            if (std::abs(off) <= constants.w_bar0)
                p += 2.0 * term.d_coef * term.c_integral *
                     (1.0 + std::cos(2.0 * off * constants.t0));
        }
        psd[j] = p;
    }
    return psd;
}

double doppler_spread_numerical(const std::vector<double> &psd,
                                const std::vector<double> &omega_grid,
                                double impulse_mass_at_zero)
{
    if (psd.size() != omega_grid.size())
        throw DimensionMismatch("spectrum and grid lengths differ");
    if (psd.size() < 2)
        throw BadLength("spectral grid needs at least two points");

    double num = 0.0;
    double den = 0.0;
    for (std::size_t j = 0; j + 1 < psd.size(); ++j)
    {
        const double dw = omega_grid[j + 1] - omega_grid[j];
        const double w_lo = omega_grid[j];
        const double w_hi = omega_grid[j + 1];
        num += 0.5 * dw * (w_lo * w_lo * psd[j] + w_hi * w_hi * psd[j + 1]);
        den += 0.5 * dw * (psd[j] + psd[j + 1]);
    }
    den += impulse_mass_at_zero;
    if (!(den > 1e-300))
        throw ZeroTotalPower("total spectral mass is not positive");
    const double ratio = num / den;
    if (ratio < 0.0)
        throw NegativeVariance("second spectral moment is negative");
    return std::sqrt(ratio);
}

double doppler_spread_closed_form(const SpectralConstants &constants)
{
    const double w0 = constants.w0;
    const double wb = constants.w_bar0;
    const double t0 = constants.t0;

    double mass = constants.c0 + 4.0 * constants.c1 * w0;
    double moment = 4.0 * constants.c1 * w0 * w0 * w0 / 3.0 -
                    8.0 * constants.c1 * w0 / (t0 * t0);
    for (const SidelobeTerm &term : constants.sidelobes)
    {
        const double dc = term.d_coef * term.c_integral;
        mass += 4.0 * dc * wb;
        moment += 4.0 * dc * wb * wb * wb / 3.0 - 2.0 * dc * wb / (t0 * t0) +
                  4.0 * dc * wb * term.w_center * term.w_center;
    }
    if (!(mass > 1e-300))
        throw ZeroTotalPower("closed-form spectral mass is not positive");
    if (moment < 0.0)
        throw NegativeVariance("closed-form second moment is negative");
    return std::sqrt(moment / mass);
}

PsdCurve psd_pipeline(const ConfigPoint &pt)
{
    require_point(pt);
    const int m = pt.n_tx;
    const double r = pt.spacing_wavelengths;
    const long rint = std::max(1L, std::lround(64.0 * r));
    const double g = 2.0 * k_pi * r / double(rint);
    const double dtau = g / pt.omega_d;
    const double w0 = pt.omega_d / (double(m) * r);
    const double tau_max = 40.0 / w0;
    const std::size_t n = std::size_t(std::ceil(tau_max / dtau)) + 1;

    // Every Bessel argument in the series lands on the lattice q * g, so one
    // table covers the whole lag sweep.
    const std::size_t table_len = n + std::size_t(m - 1) * std::size_t(rint);
    std::vector<double> table(table_len);
    for (std::size_t q = 0; q < table_len; ++q)
    {
        const double j0 = bessel_j0(double(q) * g);
        table[q] = j0 * j0;
    }

    std::vector<double> lag_record(n);
    const double scale = 2.0 * k_pi / (double(m) * m);
    for (std::size_t j = 0; j < n; ++j)
    {
        double acc = double(m) * table[j];
        const std::ptrdiff_t js = std::ptrdiff_t(j);
        for (int k = 1; k < m; ++k)
        {
            const std::ptrdiff_t off = std::ptrdiff_t(k) * rint;
            const std::ptrdiff_t lo = js - off;
            acc += double(m - k) *
                   (table[std::size_t(lo < 0 ? -lo : lo)] + table[std::size_t(js + off)]);
        }
        lag_record[j] = scale * acc;
    }

    return transform_lag_record(std::move(lag_record), dtau, pt.omega_d,
                                0.5 * w0 / 16.0);
}

PsdCurve psd_pipeline_jakes(double omega_d)
{
    if (!(omega_d > 0.0))
        throw DomainError("peak Doppler must be positive");
    const double dtau = k_pi / (32.0 * omega_d);
    const std::size_t n = std::size_t(std::ceil((500.0 / omega_d) / dtau)) + 1;
    std::vector<double> lag_record(n);
    for (std::size_t j = 0; j < n; ++j)
        lag_record[j] = bessel_j0(omega_d * double(j) * dtau);
    return transform_lag_record(std::move(lag_record), dtau, omega_d, 0.01 * omega_d);
}

std::vector<double> psd_numerical(const ConfigPoint &pt,
                                  const std::vector<double> &omega_grid)
{
    const PsdCurve curve = psd_pipeline(pt);
    std::vector<double> out(omega_grid.size(), 0.0);
    for (std::size_t j = 0; j < omega_grid.size(); ++j)
    {
        const double w = omega_grid[j];
        if (w < curve.omega.front() || w > curve.omega.back())
            continue;
        const auto it = std::upper_bound(curve.omega.begin(), curve.omega.end(), w);
        const std::size_t hi = std::min<std::size_t>(
            std::size_t(it - curve.omega.begin()), curve.omega.size() - 1);
        const std::size_t lo = hi == 0 ? 0 : hi - 1;
        if (hi == lo)
        {
            out[j] = curve.psd[lo];
            continue;
        }
        const double t = (w - curve.omega[lo]) / (curve.omega[hi] - curve.omega[lo]);
        out[j] = (1.0 - t) * curve.psd[lo] + t * curve.psd[hi];
    }
    return out;
}

SpectrumReport make_spectrum_report(const ConfigPoint &pt)
{
    SpectrumReport report;
    report.point = pt;

    const PsdCurve curve = psd_pipeline(pt);
    for (std::size_t j = 0; j < curve.omega.size(); ++j)
    {
        if (std::abs(curve.omega[j]) <= 2.0 * pt.omega_d)
        {
            report.omega_grid.push_back(curve.omega[j]);
            report.psd_numerical.push_back(curve.psd[j]);
        }
    }

    const SpectralConstants constants =
        spectral_constants(pt.n_tx, pt.spacing_wavelengths, pt.omega_d);
    report.psd_closed_form = psd_closed_form(constants, report.omega_grid);
    report.impulse_mass = constants.c0;
    report.sigma_ds_numerical =
        doppler_spread_numerical(report.psd_numerical, report.omega_grid);
    report.sigma_ds_closed_form = doppler_spread_closed_form(constants);
    report.sigma_jakes = ulasim::sigma_jakes(pt.omega_d);
    return report;
}

void write_spectrum_csv(const SpectrumReport &report, std::ostream &out)
{
    out << "# n_tx=" << report.point.n_tx
        << ",spacing_wavelengths=" << format_double(report.point.spacing_wavelengths)
        << ",omega_d_rad_s=" << format_double(report.point.omega_d) << "\n";
    out << "# sigma_ds_numerical_rad_s=" << format_double(report.sigma_ds_numerical)
        << "\n";
    out << "# sigma_ds_closed_form_rad_s=" << format_double(report.sigma_ds_closed_form)
        << "\n";
    out << "# sigma_jakes_rad_s=" << format_double(report.sigma_jakes) << "\n";
    out << "# impulse_mass_at_zero=" << format_double(report.impulse_mass) << "\n";
    out << "omega_rad_s,psd_numerical,psd_closed_form\n";
    for (std::size_t j = 0; j < report.omega_grid.size(); ++j)
    {
        out << format_double(report.omega_grid[j]) << ','
            << format_double(report.psd_numerical[j]) << ','
            << format_double(report.psd_closed_form[j]) << "\n";
    }
}

} // namespace ulasim
