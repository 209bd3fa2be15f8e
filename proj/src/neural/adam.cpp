// SPDX-License-Identifier: Apache-2.0
//
// softpc: soft (near-analog) wireless delivery of 3D point clouds
// Copyright (C) 2026 The softpc Authors
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

#include "softpc/neural/adam.hpp"
#include "softpc/error.hpp"

#include <cmath>

namespace softpc::neural
{
    AdamState make_adam_state(std::span<Tensor2 *const> params)
    {
        AdamState s;
        for (const Tensor2 *p : params)
        {
            s.m.emplace_back(p->value.rows(), p->value.cols());
            s.v.emplace_back(p->value.rows(), p->value.cols());
        }
        return s;
    }

    void adam_step(std::span<Tensor2 *const> params, AdamState &state, const AdamConfig &cfg)
    {
        if (state.m.size() != params.size() || state.v.size() != params.size())
            throw ParameterError("adam_step: optimizer state does not match parameter list");
        const std::uint64_t t = state.step + 1;
        const double bc1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(t));
        const double bc2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(t));
        for (std::size_t k = 0; k < params.size(); ++k)
        {
            Tensor2 &p = *params[k];
            if (!p.grad.same_shape(p.value) || !state.m[k].same_shape(p.value))
                throw ParameterError("adam_step: shape mismatch in tensor " + std::to_string(k));
            auto w = p.value.values();
            auto g = p.grad.values();
            auto m = state.m[k].values();
            auto v = state.v[k].values();
            for (std::size_t i = 0; i < w.size(); ++i)
            {
                m[i] = cfg.beta1 * m[i] + (1.0 - cfg.beta1) * g[i];
                v[i] = cfg.beta2 * v[i] + (1.0 - cfg.beta2) * g[i] * g[i];
                const double m_hat = m[i] / bc1;
                const double v_hat = v[i] / bc2;
                w[i] -= cfg.lr * m_hat / (std::sqrt(v_hat) + cfg.eps);
            }
        }
        state.step = t;
    }
}
