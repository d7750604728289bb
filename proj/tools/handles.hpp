#pragma once

// RAII wrappers over the C API handles.

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "mffdfa/mffdfa.h"

namespace mffdfa::cli {

/// Failure carrying the C API status, which doubles as the process exit code.
class CliError : public std::runtime_error {
public:
    CliError(mffdfa_status status, const std::string& message)
        : std::runtime_error(message), status_(status)
    {
    }

    mffdfa_status status() const noexcept { return status_; }

private:
    mffdfa_status status_;
};

inline void check(mffdfa_status status)
{
    if (status != MFFDFA_OK)
        throw CliError(status, mffdfa_last_error());
}

struct SeriesDeleter {
    void operator()(mffdfa_series* s) const noexcept { mffdfa_series_destroy(s); }
};
struct ResultDeleter {
    void operator()(mffdfa_result* r) const noexcept { mffdfa_result_destroy(r); }
};

using Series = std::unique_ptr<mffdfa_series, SeriesDeleter>;
using Result = std::unique_ptr<mffdfa_result, ResultDeleter>;

inline Series make_series(const std::vector<double>& values)
{
    mffdfa_series* raw = nullptr;
    check(mffdfa_series_create(values.data(), values.size(), &raw));
    return Series(raw);
}

inline std::vector<double> series_values(const mffdfa_series* s)
{
    std::vector<double> out(mffdfa_series_length(s));
    mffdfa_series_values(s, out.data(), out.size());
    return out;
}

inline std::vector<double> result_field(const mffdfa_result* r, mffdfa_field field)
{
    std::vector<double> out(mffdfa_result_field_size(r, field));
    mffdfa_result_field(r, field, out.data(), out.size());
    return out;
}

} // namespace mffdfa::cli
