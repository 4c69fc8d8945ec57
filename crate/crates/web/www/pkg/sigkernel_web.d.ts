/* tslint:disable */
/* eslint-disable */

/**
 * Kernel solution on the product grid of two strokes.
 */
export class Surface {
    private constructor();
    free(): void;
    [Symbol.dispose](): void;
    readonly cols: number;
    readonly kernel: number;
    readonly rows: number;
    /**
     * Row-major `u` values; the last entry is the kernel.
     */
    readonly values: Float64Array;
}

/**
 * Errors of one Brownian pair against its fine-grid reference, ordered by
 * degree `1..=max_degree` then by factor.
 */
export function convergence_curve(seed: number, n_fine: number, factors: Uint32Array, max_degree: number): Float64Array;

export function kernel_surface(a: Float64Array, b: Float64Array, degree: number, every: number): Surface;

/**
 * Log-signature of a whole stroke, scalar slot dropped.
 */
export function stroke_logsig(points: Float64Array, degree: number): Float64Array;

/**
 * Labels `w_1, w_2, w_11, ...` of the non-empty words up to `degree`.
 */
export function word_labels(dim: number, degree: number): string[];

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_surface_free: (a: number, b: number) => void;
    readonly convergence_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
    readonly kernel_surface: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
    readonly stroke_logsig: (a: number, b: number, c: number) => [number, number, number, number];
    readonly surface_cols: (a: number) => number;
    readonly surface_kernel: (a: number) => number;
    readonly surface_rows: (a: number) => number;
    readonly surface_values: (a: number) => [number, number];
    readonly word_labels: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __externref_table_dealloc: (a: number) => void;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __externref_drop_slice: (a: number, b: number) => void;
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
