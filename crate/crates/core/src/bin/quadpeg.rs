// SPDX-License-Identifier: Apache-2.0

fn main() {
    quadpeg::cli::init_logging();
    std::process::exit(quadpeg::cli::run(std::env::args_os()));
}
