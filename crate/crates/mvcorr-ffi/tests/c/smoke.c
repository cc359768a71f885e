#include <stdio.h>
#include <string.h>
#include "mvcorr.h"

int main(void) {
    MvcorrAlgebra *alg = NULL;
    if (mvcorr_algebra_builtin("paper-P", &alg) != MvcorrErrorCode_Ok) return 10;
    if (mvcorr_algebra_size(alg) != 5) return 11;

    MvcorrAlbaResult *res = NULL;
    if (mvcorr_alba_run(alg, "p -> <>p", "gamma", &res) != MvcorrErrorCode_Ok) return 12;
    if (mvcorr_alba_status(res) != MvcorrAlbaStatus_Success) return 13;
    char *fo = mvcorr_alba_correspondent(res);
    printf("%s\n", fo);
    int bad = strcmp(fo, "a <= R(x,x)") != 0;
    mvcorr_string_free(fo);
    mvcorr_alba_free(res);
    if (bad) return 14;

    if (mvcorr_algebra_builtin("nope", &alg) != MvcorrErrorCode_Algebra) return 15;
    char *msg = mvcorr_last_error();
    if (msg == NULL) return 16;
    mvcorr_string_free(msg);

    mvcorr_algebra_free(alg);
    return 0;
}
