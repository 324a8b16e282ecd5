export function l2Norm(vector: number[]): number {
  let sum = 0;
  for (const v of vector) {
    sum += v * v;
  }
  return Math.sqrt(sum);
}

export function l2Normalize(vector: number[]): number[] {
  const norm = l2Norm(vector);
  if (norm < 1e-12) {
    throw new Error("cannot normalize a zero vector");
  }
  return vector.map((v) => v / norm);
}
