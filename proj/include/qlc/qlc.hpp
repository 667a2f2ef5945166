/*
 * Copyright 2026 the qlc developers
 *
 * SPDX-License-Identifier: Apache-2.0
 */

#pragma once

#include "qlc/bitstring.hpp"
#include "qlc/channel.hpp"
#include "qlc/codec.hpp"
#include "qlc/decomposition.hpp"
#include "qlc/fock.hpp"
#include "qlc/io.hpp"
#include "qlc/prefix.hpp"
