#include <stdio.h>
#include <string.h>
#include "lg_orbifold.h"

static const char *PROBLEM =
    "[polynomial]\n"
    "fermat = 5 5 5 5 5\n"
    "[group]\n"
    "J\n";

int main(void) {
    LgProblem *problem = NULL;
    if (lg_problem_parse(PROBLEM, &problem) != LG_STATUS_OK) {
        fprintf(stderr, "parse: %s\n", lg_last_error());
        return 1;
    }
    LgResult *result = NULL;
    if (lg_compute(problem, 0, &result) != LG_STATUS_OK) {
        fprintf(stderr, "compute: %s\n", lg_last_error());
        return 1;
    }
    char *csv = NULL;
    if (lg_result_csv(result, 1, &csv) != LG_STATUS_OK) {
        return 1;
    }
    printf("order=%zu h11=%lld h21=%lld\n", lg_result_group_order(result),
           (long long)lg_result_hodge_number(result, 1, 1), (long long)lg_result_hodge_number(result, 2, 1));
    printf("%s", csv);
    lg_string_free(csv);
    lg_result_free(result);
    lg_problem_free(problem);

    LgProblem *missing = NULL;
    if (lg_problem_preset("no-such-preset", &missing) != LG_STATUS_NOT_FOUND || missing != NULL) {
        return 1;
    }
    printf("error=%s\n", lg_last_error());
    return 0;
}
