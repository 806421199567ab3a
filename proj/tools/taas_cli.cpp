// Copyright 2026 The TaaS Authors
// SPDX-License-Identifier: Apache-2.0

#include <iostream>

#include "taas/service/cli.hpp"

int main(int argc, char** argv) { return taas::service::run_cli(argc, argv, std::cout, std::cerr); }
