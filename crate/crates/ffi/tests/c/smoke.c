#include <stdio.h>
#include <string.h>

#include "qrr.h"

#define CHECK(cond)                                              \
    do {                                                         \
        if (!(cond)) {                                           \
            fprintf(stderr, "%s:%d: %s\n", __FILE__, __LINE__, #cond); \
            return 1;                                            \
        }                                                        \
    } while (0)

int main(void) {
    QrrRegistry *reg = NULL;
    CHECK(qrr_registry_builtin(&reg) == QRR_STATUS_OK);
    CHECK(qrr_registry_len(reg) > 200);

    QrrOutcome *out = NULL;
    CHECK(qrr_registry_verify(reg, "t1-1", 300, &out) == QRR_STATUS_OK);
    CHECK(qrr_outcome_is_zero(out));
    qrr_outcome_free(out);

    CHECK(qrr_verify(reg, "G(q)*H(q)", "fm(q^5)/fm(-q)", 100, &out) == QRR_STATUS_NONZERO);
    int64_t num = 0, den = 0;
    const char *coefficient = NULL;
    CHECK(qrr_outcome_first_nonzero(out, &num, &den, &coefficient) == QRR_STATUS_OK);
    CHECK(num == 1 && den == 1 && strcmp(coefficient, "2") == 0);
    qrr_outcome_free(out);

    QrrSeries *series = NULL;
    CHECK(qrr_expand(reg, "phi(q)", 50, &series) == QRR_STATUS_OK);
    CHECK(qrr_series_len(series) == 4);
    CHECK(qrr_series_term(series, 3, &num, &den, &coefficient) == QRR_STATUS_OK);
    CHECK(num == 9 && den == 1 && strcmp(coefficient, "2") == 0);
    qrr_series_free(series);

    CHECK(qrr_expand(reg, "phi(", 50, &series) == QRR_STATUS_PARSE);
    CHECK(strlen(qrr_last_error()) > 0);

    qrr_registry_free(reg);
    printf("ok\n");
    return 0;
}
