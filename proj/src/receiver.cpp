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

#include "ulasim/receiver.hpp"
#include "ulasim/errors.hpp"

#include <cmath>

namespace ulasim
{

RxFreq demodulate_frame(const RxFrame &rx, int n_cp)
{
    const int n_c = rx.samples_per_block - n_cp;
    RxFreq out;
    out.n_rx = rx.n_rx;
    out.n_blocks = rx.n_blocks;
    out.n_subcarriers = n_c;
    out.sym.resize(static_cast<size_t>(rx.n_blocks) * rx.n_rx * n_c);

    std::vector<cplx> block(static_cast<size_t>(rx.samples_per_block));
    for (int m = 0; m < rx.n_blocks; ++m)
        for (int r = 0; r < rx.n_rx; ++r)
        {
            for (int j = 0; j < rx.samples_per_block; ++j)
                block[static_cast<size_t>(j)] = rx.at(r, m, j);
            std::vector<cplx> f = demodulate_block(block, n_cp);
            std::copy(f.begin(), f.end(),
                      out.sym.begin() + (static_cast<size_t>(m) * rx.n_rx + r) * n_c);
        }
    return out;
}

ChannelEstimate ls_estimate(const RxFreq &rx, const std::vector<cplx> &training_symbols)
{
    if (static_cast<int>(training_symbols.size()) != rx.n_subcarriers)
        throw DimensionMismatch("training symbol count differs from subcarrier count");
    for (const cplx &x : training_symbols)
        if (x == cplx(0.0, 0.0))
            throw ZeroTrainingSymbol("training symbol is exactly zero");

    ChannelEstimate est;
    est.n_rx = rx.n_rx;
    est.n_subcarriers = rx.n_subcarriers;
    est.h.resize(static_cast<size_t>(rx.n_rx) * rx.n_subcarriers);
    for (int r = 0; r < rx.n_rx; ++r)
        for (int k = 0; k < rx.n_subcarriers; ++k)
            est.h[static_cast<size_t>(r) * rx.n_subcarriers + k] =
                rx.at(r, 0, k) / training_symbols[static_cast<size_t>(k)];
    return est;
}

DetectionResult mrc_detect(const RxFreq &rx, const ChannelEstimate &est)
{
    if (est.n_rx != rx.n_rx || est.n_subcarriers != rx.n_subcarriers)
        throw DimensionMismatch("estimate shape differs from received frame");

    const int n_c = rx.n_subcarriers;
    DetectionResult det;
    det.n_data_blocks = rx.n_blocks - 1;
    det.n_subcarriers = n_c;
    det.symbols.resize(static_cast<size_t>(det.n_data_blocks) * n_c);
    det.erased.assign(static_cast<size_t>(n_c), 0);

    std::vector<double> denom(static_cast<size_t>(n_c), 0.0);
    for (int k = 0; k < n_c; ++k)
    {
        double d = 0.0;
        for (int r = 0; r < rx.n_rx; ++r)
            d += std::norm(est.at(r, k));
        denom[static_cast<size_t>(k)] = d;
        if (d < 1e-30)
            det.erased[static_cast<size_t>(k)] = 1;
    }

    for (int md = 0; md < det.n_data_blocks; ++md)
        for (int k = 0; k < n_c; ++k)
        {
            if (det.erased[static_cast<size_t>(k)])
            {
                det.symbols[static_cast<size_t>(md) * n_c + k] = 0.0;
                continue;
            }
            cplx num = 0.0;
            for (int r = 0; r < rx.n_rx; ++r)
                num += std::conj(est.at(r, k)) * rx.at(r, md + 1, k);
            det.symbols[static_cast<size_t>(md) * n_c + k] =
                num / denom[static_cast<size_t>(k)];
        }
    return det;
}

std::pair<long, long> count_ser(const DetectionResult &det,
                                const std::vector<cplx> &reference_symbols)
{
    const size_t total = static_cast<size_t>(det.n_data_blocks) * det.n_subcarriers;
    if (reference_symbols.size() != total)
        throw DimensionMismatch("reference symbol count differs from detected count");

    long errors = 0;
    for (size_t i = 0; i < total; ++i)
    {
        const int k = static_cast<int>(i % static_cast<size_t>(det.n_subcarriers));
        if (det.erased[static_cast<size_t>(k)] ||
            qam16_slice(det.symbols[i]) != reference_symbols[i])
            ++errors;
    }
    return {errors, static_cast<long>(total)};
}

} // namespace ulasim
