/* C interface to the shape-formation pipeline.
 *
 * Every call takes JSON text in, returns an opaque result handle holding JSON
 * (or JSON-lines for traces) out. Inspect the status code, read the string
 * with hxs_result_str (an error message on failure), free the handle with
 * hxs_result_free.
 */
#ifndef HEXSWARM_H
#define HEXSWARM_H

#ifdef __cplusplus
extern "C" {
#endif

typedef enum {
    HXS_OK = 0,
    HXS_IO_ERROR = 1,      /* unparsable or schema-invalid input */
    HXS_DOMAIN_ERROR = 2,  /* no proper placement, verification failure, ... */
    HXS_MONITOR_ABORT = 3, /* a runtime invariant monitor failed in strict mode */
} hxs_status;

typedef struct hxs_result hxs_result;

const char* hxs_result_str(const hxs_result* r);
void hxs_result_free(hxs_result* r);

/* shape spec JSON + frame JSON {"r","safety","chirality"} -> placement JSON.
 * On HXS_DOMAIN_ERROR the result holds the violation list of the best pose. */
hxs_status hxs_place(const char* shape_json, const char* frame_json, hxs_result** out);

/* placement JSON -> plan JSON. */
hxs_status hxs_plan(const char* placement_json, hxs_result** out);

/* plan JSON -> verification report JSON (HXS_DOMAIN_ERROR when not ok). */
hxs_status hxs_verify(const char* plan_json, hxs_result** out);

/* plan JSON + params JSON {"dtheta","sigma","seed","strict"} -> trace JSONL. */
hxs_status hxs_simulate(const char* plan_json, const char* params_json, hxs_result** out);

/* trace JSONL + sub-epoch stride -> {"svgs": ["<svg.../>", ...]}. */
hxs_status hxs_render(const char* trace_jsonl, int every, hxs_result** out);

#ifdef __cplusplus
}
#endif

#endif /* HEXSWARM_H */
