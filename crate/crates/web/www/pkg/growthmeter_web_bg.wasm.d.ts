/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const curlGridJson: (a: number, b: number, c: number, d: number, e: number) => [number, number];
export const islandsJson: (a: number, b: number, c: number, d: number, e: number) => [number, number];
export const kaldorJson: (a: number, b: number, c: number, d: number, e: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
