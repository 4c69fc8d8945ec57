/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_surface_free: (a: number, b: number) => void;
export const convergence_curve: (a: number, b: number, c: number, d: number, e: number) => [number, number, number, number];
export const kernel_surface: (a: number, b: number, c: number, d: number, e: number, f: number) => [number, number, number];
export const stroke_logsig: (a: number, b: number, c: number) => [number, number, number, number];
export const surface_cols: (a: number) => number;
export const surface_kernel: (a: number) => number;
export const surface_rows: (a: number) => number;
export const surface_values: (a: number) => [number, number];
export const word_labels: (a: number, b: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __externref_table_dealloc: (a: number) => void;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __externref_drop_slice: (a: number, b: number) => void;
export const __wbindgen_start: () => void;
