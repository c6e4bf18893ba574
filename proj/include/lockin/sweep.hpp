#pragma once

#include "lockin/config.hpp"
#include "lockin/manifest.hpp"

namespace lockin {

// Executes a fully resolved JobConfig: evaluates the requested product
// (with at most config.workers cells in flight for map jobs), writes all
// artifacts atomically from the calling thread, and writes the manifest
// last. Returns the manifest. Numeric failures of single-point jobs
// propagate (numeric_error/search_error); map cells fail into NaN cells
// counted in the manifest. Filesystem problems raise io_error.
RunManifest run_job(const JobConfig& config);

// Effective worker count: CLI flag (if > 0), else config value (if > 0),
// else the LOCKIN_WORKERS environment variable, else 1.
// A malformed environment value raises config_error.
int resolve_workers(int cli_flag, int config_value);

} // namespace lockin
