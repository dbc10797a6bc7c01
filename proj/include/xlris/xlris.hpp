// SPDX-License-Identifier: Apache-2.0
//
// xlris-beamtrain: near-field beam training simulation for XL-RIS links
// Copyright (C) 2026 The xlris-beamtrain authors
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

#ifndef XLRIS_XLRIS_HPP
#define XLRIS_XLRIS_HPP

#include "channel.hpp"
#include "codebook.hpp"
#include "codebook_io.hpp"
#include "config.hpp"
#include "config_json.hpp"
#include "dataset.hpp"
#include "errors.hpp"
#include "experiment.hpp"
#include "external_predictor.hpp"
#include "geometry.hpp"
#include "linalg.hpp"
#include "metrics.hpp"
#include "parallel.hpp"
#include "predictor.hpp"
#include "rng.hpp"
#include "schemes.hpp"
#include "tensor_io.hpp"

#endif
