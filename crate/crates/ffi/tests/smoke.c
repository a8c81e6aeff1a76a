#include <math.h>
#include <stdio.h>

#include "unimorph.h"

int main(void) {
    UnimorphMaterial pvdf = {2.5e9, 1800.0, -25e-12, 100e6, 0.02};
    UnimorphMaterial sub = {2.0e9, 1420.0, 0.0, 0.0, 0.0};
    UnimorphStack *s = unimorph_stack_new(0.01, 0.01);
    UnimorphMetrics m;
    int i;

    if (unimorph_stack_add_layer(s, UNIMORPH_ROLE_SUBSTRATE, 50e-6, &sub) != UNIMORPH_STATUS_OK)
        return 10;
    for (i = 0; i < 4; i++)
        unimorph_stack_add_layer(s, UNIMORPH_ROLE_ACTIVE, 7e-6, &pvdf);
    if (unimorph_evaluate(s, 300.0, &m) != UNIMORPH_STATUS_OK)
        return 11;
    unimorph_stack_free(s);
    printf("F = %.4f mN, d = %.4f mm\n", m.blocked_force * 1e3, m.free_deflection * 1e3);
    if (fabs(m.blocked_force * 1e3 + 2.5809) > 1e-3 || !m.feasible)
        return 12;

    s = unimorph_stack_new(0.01, 0.01);
    unimorph_stack_add_layer(s, UNIMORPH_ROLE_SUBSTRATE, 50e-6, &sub);
    if (unimorph_evaluate(s, 300.0, &m) != UNIMORPH_STATUS_VALIDATION)
        return 13;
    if (unimorph_last_error_message() == NULL)
        return 14;
    printf("expected error: %s\n", unimorph_last_error_message());
    unimorph_stack_free(s);
    return 0;
}
