#ifndef UNIMORPH_H
#define UNIMORPH_H

/* Generated by cbindgen from crates/ffi/src/lib.rs; do not edit. */

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

typedef enum UnimorphStatus {
  UNIMORPH_STATUS_OK = 0,
  UNIMORPH_STATUS_IO = 1,
  UNIMORPH_STATUS_PARSE = 2,
  UNIMORPH_STATUS_VALIDATION = 3,
  UNIMORPH_STATUS_COMPUTATION = 4,
  UNIMORPH_STATUS_EMPTY_FEASIBLE_SET = 5,
  UNIMORPH_STATUS_NULL_POINTER = 6,
  UNIMORPH_STATUS_PANIC = 7,
} UnimorphStatus;

typedef enum UnimorphRole {
  UNIMORPH_ROLE_SUBSTRATE = 0,
  UNIMORPH_ROLE_ADHESIVE = 1,
  UNIMORPH_ROLE_ACTIVE = 2,
} UnimorphRole;

// Opaque stack builder.
typedef struct UnimorphStack UnimorphStack;

// Material properties in SI units. A limit of zero means "no limit".
typedef struct UnimorphMaterial {
  double youngs_modulus;
  double density;
  double d31;
  double dielectric_strength;
  double max_strain;
} UnimorphMaterial;

typedef struct UnimorphMetrics {
  double neutral_axis;
  double flexural_stiffness;
  double free_strain;
  double actuation_moment;
  double blocked_force;
  double free_deflection;
  double tip_stiffness;
  double resonance_frequency;
  double mass_per_length;
  double actuator_mass;
  bool feasible;
} UnimorphMetrics;

typedef struct UnimorphTraceInfo {
  double load_mass;
  double actuator_mass;
  double drive_frequency;
} UnimorphTraceInfo;

// Means over the retained cycles, plus the sample standard deviation of
// the power density.
typedef struct UnimorphCycleSummary {
  size_t cycles;
  size_t discarded;
  double work_net;
  double work_positive;
  double power;
  double energy_density;
  double power_density;
  double power_density_std;
} UnimorphCycleSummary;

// `quality_factor` is NaN when `q_available` is false.
typedef struct UnimorphResonance {
  double resonance_frequency;
  double quality_factor;
  bool boundary_limited;
  bool q_available;
} UnimorphResonance;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the most recent failure on this thread, or null. The
// pointer stays valid until the next call into this library.
const char *unimorph_last_error_message(void);

// Library version as a static NUL-terminated string.
const char *unimorph_version(void);

// New empty stack of the given planform (m). Layers are added bottom to
// top. Free with [`unimorph_stack_free`].
struct UnimorphStack *unimorph_stack_new(double width, double length);

// # Safety
// `stack` must come from [`unimorph_stack_new`] and not have been freed.
void unimorph_stack_free(struct UnimorphStack *stack);

// Appends a layer on top of the stack. Values are checked when the stack
// is evaluated.
//
// # Safety
// `stack` must be a live handle; `material` must point to a valid struct.
enum UnimorphStatus unimorph_stack_add_layer(struct UnimorphStack *stack,
                                             enum UnimorphRole role,
                                             double thickness,
                                             const struct UnimorphMaterial *material);

// Number of layers added so far.
//
// # Safety
// `stack` must be a live handle or null.
size_t unimorph_stack_layer_count(const struct UnimorphStack *stack);

// Quasi-static model of the stack at `voltage` (V).
//
// # Safety
// `stack` must be a live handle; `out` must point to writable memory.
enum UnimorphStatus unimorph_evaluate(const struct UnimorphStack *stack,
                                      double voltage,
                                      struct UnimorphMetrics *out);

// Per-cycle work and power of a constant-frequency displacement trace
// (s, m). `smoothing_window` is an odd sample count; 1 disables smoothing.
//
// # Safety
// `time` and `displacement` must each hold `len` values; `info` and `out`
// must be valid pointers.
enum UnimorphStatus unimorph_cycle_metrics(const double *time,
                                           const double *displacement,
                                           size_t len,
                                           const struct UnimorphTraceInfo *info,
                                           size_t smoothing_window,
                                           struct UnimorphCycleSummary *out);

// Resonance and Q from a linear chirp from `f_lo` to `f_hi` (Hz) spanning
// the trace, binned into `bins` frequency bins. A missing Q is not an
// error: `q_available` is false and the reason is left in the last-error
// message.
//
// # Safety
// `time` and `displacement` must each hold `len` values; `out` must be
// valid.
enum UnimorphStatus unimorph_chirp_resonance(const double *time,
                                             const double *displacement,
                                             size_t len,
                                             double f_lo,
                                             double f_hi,
                                             size_t bins,
                                             struct UnimorphResonance *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* UNIMORPH_H */
