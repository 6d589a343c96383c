#ifndef KGROUP_H
#define KGROUP_H

/* Generated by cbindgen from crates/ffi/src/lib.rs. Do not edit. */

#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>

typedef enum KgStatus {
  KG_STATUS_OK = 0,
  /**
   * Null pointer, bad UTF-8 or an out-of-range index.
   */
  KG_STATUS_INVALID_ARGUMENT = 1,
  /**
   * Malformed document or table.
   */
  KG_STATUS_INVALID_INPUT = 2,
  KG_STATUS_CAP_EXCEEDED = 3,
  KG_STATUS_NOT_A_HOMOMORPHISM = 4,
  KG_STATUS_CONDITION_STAR_VIOLATED = 5,
  KG_STATUS_INTERNAL = 6,
} KgStatus;

/**
 * A finitely generated abelian group.
 */
typedef struct KgAbGroup KgAbGroup;

/**
 * A truncated symmetric monoidal groupoid.
 */
typedef struct KgGroupoid KgGroupoid;

/**
 * A finite commutative monoid.
 */
typedef struct KgMonoid KgMonoid;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * Message for the last failed call on this thread, or null. Valid until the next call.
 */
const char *kg_last_error(void);

/**
 * # Safety
 * `s` must come from this library and not have been freed.
 */
void kg_string_free(char *s);

/**
 * Parses a `monoid-table` document.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum KgStatus kg_monoid_from_json(const char *json, struct KgMonoid **out);

/**
 * `Z/n` for `n >= 1`.
 *
 * # Safety
 * `out` must be writable.
 */
enum KgStatus kg_monoid_cyclic(size_t n, struct KgMonoid **out);

/**
 * # Safety
 * `m` must be a live handle or null.
 */
size_t kg_monoid_size(const struct KgMonoid *m);

/**
 * # Safety
 * `m` must come from this library and not have been freed.
 */
void kg_monoid_free(struct KgMonoid *m);

/**
 * A builtin groupoid: `"fin"`, `"nat"` or `"freemod"` (which uses `modulus`).
 * A `cap` of 0 selects the default.
 *
 * # Safety
 * `name` must be a nul-terminated string; `out` must be writable.
 */
enum KgStatus kg_groupoid_builtin(const char *name,
                                  uint64_t modulus,
                                  size_t truncation,
                                  size_t cap,
                                  struct KgGroupoid **out);

/**
 * Parses a `groupoid-builtin` or `groupoid-custom` document.
 *
 * # Safety
 * `json` must be a nul-terminated string; `out` must be writable.
 */
enum KgStatus kg_groupoid_from_json(const char *json, struct KgGroupoid **out);

/**
 * # Safety
 * `g` must be a live handle or null.
 */
size_t kg_groupoid_truncation(const struct KgGroupoid *g);

/**
 * Writes whether every translation is injective.
 *
 * # Safety
 * `g` must be a live handle; `holds` must be writable.
 */
enum KgStatus kg_groupoid_condition_star(const struct KgGroupoid *g, size_t cap, bool *holds);

/**
 * # Safety
 * `g` must come from this library and not have been freed.
 */
void kg_groupoid_free(struct KgGroupoid *g);

/**
 * Grothendieck group of a finite monoid.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum KgStatus kg_grothendieck(const struct KgMonoid *m, struct KgAbGroup **out);

/**
 * `K₀` of a groupoid.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum KgStatus kg_k0(const struct KgGroupoid *g, struct KgAbGroup **out);

/**
 * `K₁` of a groupoid at its truncation. A `cap` of 0 selects the default.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum KgStatus kg_k1(const struct KgGroupoid *g, size_t cap, struct KgAbGroup **out);

/**
 * `K₀` of a finite monoid with `Z/n` coefficients.
 *
 * # Safety
 * `m` must be a live handle; `out` must be writable.
 */
enum KgStatus kg_coefficients(const struct KgMonoid *m, uint64_t n, struct KgAbGroup **out);

/**
 * # Safety
 * `g` must be a live handle or null.
 */
size_t kg_abgroup_free_rank(const struct KgAbGroup *g);

/**
 * # Safety
 * `g` must be a live handle or null.
 */
size_t kg_abgroup_factor_count(const struct KgAbGroup *g);

/**
 * Writes the `i`-th invariant factor; fails if it does not fit in 64 bits.
 *
 * # Safety
 * `g` must be a live handle; `out` must be writable.
 */
enum KgStatus kg_abgroup_factor(const struct KgAbGroup *g, size_t i, uint64_t *out);

/**
 * JSON form `{"free_rank": .., "invariant_factors": [..]}`; free with [`kg_string_free`].
 *
 * # Safety
 * `g` must be a live handle or null.
 */
char *kg_abgroup_to_json(const struct KgAbGroup *g);

/**
 * # Safety
 * `g` must come from this library and not have been freed.
 */
void kg_abgroup_free(struct KgAbGroup *g);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* KGROUP_H */
