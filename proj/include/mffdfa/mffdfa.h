/* C interface to the mffdfa library.
 *
 * All objects are opaque handles owned by the caller and released with the
 * matching *_destroy function. Every fallible call returns an mffdfa_status;
 * on failure mffdfa_last_error() describes the problem (thread-local, valid
 * until the next failing call on the same thread).
 */
#ifndef MFFDFA_H
#define MFFDFA_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(MFFDFA_BUILDING)
#    define MFFDFA_API __declspec(dllexport)
#  else
#    define MFFDFA_API __declspec(dllimport)
#  endif
#else
#  define MFFDFA_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum mffdfa_status {
    MFFDFA_OK = 0,
    MFFDFA_ERR_INPUT = 2,     /* malformed or out-of-range input */
    MFFDFA_ERR_NUMERICAL = 3, /* degenerate data, insufficient scales */
    MFFDFA_ERR_INTERNAL = 4
} mffdfa_status;

typedef enum mffdfa_method {
    MFFDFA_METHOD_MFDFA = 0,
    MFFDFA_METHOD_MFDFA_OVERLAP = 1,
    MFFDFA_METHOD_MFFDFA = 2
} mffdfa_method;

typedef enum mffdfa_abscissa {
    MFFDFA_ABSCISSA_RAW = 0,
    MFFDFA_ABSCISSA_NORMALIZED = 1
} mffdfa_abscissa;

typedef struct mffdfa_series mffdfa_series;
typedef struct mffdfa_result mffdfa_result;

typedef struct mffdfa_config {
    int method;          /* mffdfa_method */
    int order;           /* fixed polynomial order m in [1, 10] */
    size_t overlap;      /* k; ignored (1) for MFFDFA_METHOD_MFDFA */
    double q_min;
    double q_max;
    double q_step;
    size_t s_min;
    size_t s_max;        /* 0 selects floor(N / 10) */
    size_t n_scales;
    int abscissa;        /* mffdfa_abscissa */
    size_t fit_s_lo;     /* scaling-fit range; both 0 uses every scale */
    size_t fit_s_hi;
    unsigned threads;
} mffdfa_config;

MFFDFA_API const char* mffdfa_version(void);
MFFDFA_API const char* mffdfa_last_error(void);

MFFDFA_API void mffdfa_config_default(mffdfa_config* config);
MFFDFA_API const char* mffdfa_method_name(int method);
MFFDFA_API mffdfa_status mffdfa_method_parse(const char* name, int* method);

/* q_min, q_min + step, ..., q_max, with values near zero snapped to 0.
 * Writes min(count, capacity) values and stores the grid size in *count. */
MFFDFA_API mffdfa_status mffdfa_q_grid(double q_min, double q_max, double q_step, double* out, size_t capacity,
                                       size_t* count);

/* Series */
MFFDFA_API mffdfa_status mffdfa_series_create(const double* values, size_t length, mffdfa_series** out);
MFFDFA_API void mffdfa_series_destroy(mffdfa_series* series);
MFFDFA_API size_t mffdfa_series_length(const mffdfa_series* series);
/* Copies min(length, capacity) values; returns the series length. */
MFFDFA_API size_t mffdfa_series_values(const mffdfa_series* series, double* out, size_t capacity);
/* Cumulative mean-subtracted sum; `out` must hold mffdfa_series_length values. */
MFFDFA_API mffdfa_status mffdfa_series_profile(const mffdfa_series* series, double* out);
/* Log returns of a price series. `session_starts` (may be NULL when
 * n_sessions == 0) lists price indices that open a new session; returns that
 * straddle a session boundary are dropped. */
MFFDFA_API mffdfa_status mffdfa_series_log_returns(const mffdfa_series* prices, const size_t* session_starts,
                                                   size_t n_sessions, mffdfa_series** out);

/* Generators */
MFFDFA_API mffdfa_status mffdfa_generate_fgn(double hurst, size_t length, uint64_t seed, int path,
                                             mffdfa_series** out);
MFFDFA_API mffdfa_status mffdfa_generate_cascade(double a, unsigned n_max, mffdfa_series** out);

/* Closed-form cascade spectrum. Each output array may be NULL. */
MFFDFA_API mffdfa_status mffdfa_cascade_oracle(double a, const double* q, size_t n, double* tau, double* alpha,
                                               double* f_alpha, double* h);

/* Analysis */
MFFDFA_API mffdfa_status mffdfa_analyze(const mffdfa_series* series, const mffdfa_config* config,
                                        mffdfa_result** out);
MFFDFA_API void mffdfa_result_destroy(mffdfa_result* result);

typedef enum mffdfa_field {
    MFFDFA_FIELD_Q = 0,               /* n_q */
    MFFDFA_FIELD_H = 1,               /* n_q */
    MFFDFA_FIELD_FIT_R2 = 2,          /* n_q */
    MFFDFA_FIELD_INTERCEPT = 3,       /* n_q */
    MFFDFA_FIELD_ALPHA = 4,           /* n_q */
    MFFDFA_FIELD_F_ALPHA = 5,         /* n_q */
    MFFDFA_FIELD_SCALES = 6,          /* n_scales */
    MFFDFA_FIELD_SEGMENT_COUNTS = 7,  /* n_scales */
    MFFDFA_FIELD_ZERO_VARIANCE = 8,   /* n_scales */
    MFFDFA_FIELD_RANK_DEFICIENT = 9,  /* n_scales */
    MFFDFA_FIELD_FLUCTUATION = 10,    /* n_q * n_scales, q-major; 0 marks unusable cells */
    MFFDFA_FIELD_SELECTION = 11,      /* n_bases; empty for fixed-polynomial runs */
    MFFDFA_FIELD_SELECTION_COUNTS = 12 /* n_scales * n_bases, scale-major */
} mffdfa_field;

MFFDFA_API size_t mffdfa_result_q_count(const mffdfa_result* result);
MFFDFA_API size_t mffdfa_result_scale_count(const mffdfa_result* result);
MFFDFA_API size_t mffdfa_result_basis_count(const mffdfa_result* result);
MFFDFA_API const char* mffdfa_result_basis_name(const mffdfa_result* result, size_t index);
MFFDFA_API double mffdfa_result_delta_alpha(const mffdfa_result* result);
/* Number of values in a field. */
MFFDFA_API size_t mffdfa_result_field_size(const mffdfa_result* result, int field);
/* Copies min(size, capacity) values of a field; returns the field size
 * (0 and MFFDFA_ERR_INPUT via last_error for an unknown field). */
MFFDFA_API size_t mffdfa_result_field(const mffdfa_result* result, int field, double* out, size_t capacity);

#ifdef __cplusplus
}
#endif

#endif /* MFFDFA_H */
