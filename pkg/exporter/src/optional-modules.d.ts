// Optional backend, only present when the user installs it.
declare module "@xenova/transformers" {
  export function pipeline(task: string, model?: string): Promise<any>;
}
