/* tslint:disable */
/* eslint-disable */

/**
 * Brute-force column distances `d_0..=d_jmax` of a descriptor, each next to
 * its upper bound.
 */
export function column_distances(descriptor_json: string, j_max: number): string;

/**
 * Frobenius conjugacy classes of `F_{q^k}^*` for `q = p^e`.
 */
export function conjugacy_partition(p: number, e: number, k: number): string;

/**
 * Builds the skew-Vandermonde code for `(n, k)` over `F_q` and classifies it.
 * Returns `{"descriptor": ..., "report": ...}`.
 */
export function construct_and_verify(n: number, k: number, q: number): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly column_distances: (a: number, b: number, c: number) => [number, number, number, number];
    readonly conjugacy_partition: (a: number, b: number, c: number) => [number, number, number, number];
    readonly construct_and_verify: (a: number, b: number, c: number) => [number, number, number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
