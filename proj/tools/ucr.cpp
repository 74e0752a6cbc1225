// Copyright 2026 The ucreduce Authors
// SPDX-License-Identifier: Apache-2.0

#include "ucr/cli/cli.hpp"

int main(int argc, char** argv) { return ucr::cli::run(argc, argv); }
