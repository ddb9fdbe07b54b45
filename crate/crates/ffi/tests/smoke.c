#include <stdio.h>
#include <string.h>
#include "finspace.h"

#define CHECK(expr)                                                      \
    do {                                                                 \
        if (!(expr)) {                                                   \
            fprintf(stderr, "%s:%d: %s (%s)\n", __FILE__, __LINE__,      \
                    #expr, fs_last_error());                             \
            return 1;                                                    \
        }                                                                \
    } while (0)

int main(void) {
    FsModel *model = NULL;
    const char *text =
        "space S { points 2; opens {} {1} {0 1} }\n"
        "space P { points 1; opens {} {0} }\n"
        "map m : P -> S { 0->0 }\n";
    CHECK(fs_model_parse(text, &model) == FS_OK);

    FsSpace *s = NULL;
    FsMap *m = NULL;
    CHECK(fs_model_space(model, "S", &s) == FS_OK);
    CHECK(fs_model_map(model, "m", &m) == FS_OK);
    CHECK(fs_model_space(model, "Q", &s) == FS_NOT_FOUND);

    bool inj = false, orth = false, emb = false;
    CHECK(fs_map_is_embedding(m, &emb) == FS_OK && emb);
    CHECK(fs_injective_along(s, m, &inj, &orth) == FS_OK && inj && !orth);

    size_t size = 0;
    CHECK(fs_monad_size(s, 2, &size) == FS_OK && size == 6);
    CHECK(fs_monad_size(s, 3, &size) == FS_BUDGET_EXCEEDED);

    uint32_t swapped[] = {0, 1, 3};
    FsSpace *t = NULL;
    CHECK(fs_space_from_opens(2, swapped, 3, &t) == FS_OK);
    size_t table[] = {1, 0};
    FsMap *bad = NULL;
    CHECK(fs_map_new(s, s, table, 2, &bad) == FS_NOT_CONTINUOUS);
    CHECK(strstr(fs_last_error(), "{1}") != NULL);

    FsModel *broken = NULL;
    CHECK(fs_model_parse("space B { points 2; opens {} {0} }", &broken) == FS_PARSE_ERROR);
    CHECK(strstr(fs_last_error(), "line 1") != NULL);

    FsReport *report = NULL;
    size_t pass = 0, fail = 0, skipped = 0;
    CHECK(fs_run_suite("monad-laws-point", 1, &report) == FS_OK);
    CHECK(fs_report_counts(report, &pass, &fail, &skipped) == FS_OK);
    CHECK(pass == 6 && fail == 0 && skipped == 0);
    char *rendered = NULL;
    CHECK(fs_report_render(report, FS_FORMAT_TEXT, &rendered) == FS_OK);
    CHECK(strstr(rendered, "summary suite=monad-laws-point pass=6 fail=0 skipped=0") != NULL);
    fs_string_free(rendered);
    CHECK(fs_run_suite("nope", -1, &report) == FS_UNKNOWN_SUITE);

    char *dot = NULL;
    CHECK(fs_space_export_dot(s, &dot) == FS_OK);
    CHECK(strstr(dot, "0 -> 1;") != NULL);
    fs_string_free(dot);

    fs_report_free(report);
    fs_map_free(m);
    fs_space_free(s);
    fs_space_free(t);
    fs_model_free(model);
    puts("ok");
    return 0;
}
