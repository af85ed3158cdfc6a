// Copyright 2026 The udw Authors
// SPDX-License-Identifier: Apache-2.0
#include <benchmark/benchmark.h>

// The packaged benchmark_main archive carries LTO bytecode tied to another
// compiler build, so the entry point is defined here.
BENCHMARK_MAIN();
