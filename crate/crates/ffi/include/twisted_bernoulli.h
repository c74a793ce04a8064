#ifndef TWISTED_BERNOULLI_H
#define TWISTED_BERNOULLI_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible function.
typedef enum TbStatus {
  TB_STATUS_OK = 0,
  TB_STATUS_NULL_POINTER = 1,
  TB_STATUS_INVALID_ARGUMENT = 2,
  TB_STATUS_COMPUTE_ERROR = 3,
  TB_STATUS_PARSE_ERROR = 4,
  // A verification ran but some identity instance did not hold.
  TB_STATUS_IDENTITY_FAILED = 5,
  TB_STATUS_PANIC = 6,
} TbStatus;

// A Dirichlet character.
typedef struct TbCharacter TbCharacter;

// Bernoulli numbers `B^(k)_{0..=max_n, chi, xi}`.
typedef struct TbFamily TbFamily;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Message for the last failed call on this thread, or NULL. Valid until the next call.
const char *tb_last_error_message(void);

// Principal character mod `d`.
//
// # Safety
// `out` must be valid for writes.
enum TbStatus tb_character_principal(uint64_t d, struct TbCharacter **out);

// Character mod `d` from its value table: entry `a` is `zeta_{orders[a]}^{exponents[a]}`,
// or 0 when `orders[a] == 0`.
//
// # Safety
// `orders` and `exponents` must point to `len` elements; `out` must be valid for writes.
enum TbStatus tb_character_from_table(uint64_t d,
                                      const uint64_t *orders,
                                      const int64_t *exponents,
                                      size_t len,
                                      struct TbCharacter **out);

// The `j`-th character mod `d` in the enumeration by a least primitive root.
// Writes the number of characters to `count` when it is not NULL.
//
// # Safety
// `out` must be valid for writes; `count` must be NULL or valid for writes.
enum TbStatus tb_character_enumerate(uint64_t d, size_t j, struct TbCharacter **out, size_t *count);

// Modulus of a character, or 0 for NULL.
//
// # Safety
// `chi` must be NULL or a live handle.
uint64_t tb_character_modulus(const struct TbCharacter *chi);

// # Safety
// `chi` must be NULL or a handle not yet freed.
void tb_character_free(struct TbCharacter *chi);

// `B^(k)_{n, chi, xi}` for `n = 0..=max_n`, `xi = zeta_{xi_order}^{xi_exponent}`.
//
// # Safety
// `chi` must be a live handle; `out` must be valid for writes.
enum TbStatus tb_family_compute(const struct TbCharacter *chi,
                                uint64_t xi_order,
                                int64_t xi_exponent,
                                uint64_t k,
                                size_t max_n,
                                struct TbFamily **out);

// Number of stored values (`max_n + 1`), or 0 for NULL.
//
// # Safety
// `family` must be NULL or a live handle.
size_t tb_family_len(const struct TbFamily *family);

// Conductor of the cyclotomic field holding the values, or 0 for NULL.
//
// # Safety
// `family` must be NULL or a live handle.
uint64_t tb_family_conductor(const struct TbFamily *family);

// JSON form of the `n`-th value: `"num/den"` over Q, else `{"conductor", "coeffs"}`.
//
// # Safety
// `family` must be a live handle; `out` must be valid for writes.
enum TbStatus tb_family_number_json(const struct TbFamily *family, size_t n, char **out);

// # Safety
// `family` must be NULL or a handle not yet freed.
void tb_family_free(struct TbFamily *family);

// JSON form of `T_{k, chi, xi}(n) = sum_{l <= n} chi(l) xi^l l^k`.
//
// # Safety
// `chi` must be a live handle; `out` must be valid for writes.
enum TbStatus tb_power_sum_json(const struct TbCharacter *chi,
                                uint64_t xi_order,
                                int64_t xi_exponent,
                                uint64_t k,
                                uint64_t n,
                                char **out);

// Runs the identity sweep described by `{"grids": [...]}` and writes
// `{"summary", "reports"}` to `out`. Returns `IdentityFailed` (with `out` set)
// when some instance does not hold.
//
// # Safety
// `config_json` must be a NUL-terminated string; `out` must be valid for writes.
enum TbStatus tb_verify_json(const char *config_json, size_t jobs, char **out);

// # Safety
// `s` must be NULL or a string returned by this library and not yet freed.
void tb_string_free(char *s);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* TWISTED_BERNOULLI_H */
