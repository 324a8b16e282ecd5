/**
 * Serialization into the toolkit's JSON lines embedding format: a comment
 * header recording model name and dimension, then one object per item.
 * Numbers use JavaScript's shortest round-trip representation.
 */

export function formatJsonl(
  modelName: string,
  dim: number,
  rows: Array<{ id: string; vector: number[] }>,
): string {
  const lines = [`# model=${modelName} dim=${dim}`];
  for (const row of rows) {
    const values = row.vector.map((v) => JSON.stringify(v)).join(", ");
    lines.push(`{"id": ${JSON.stringify(row.id)}, "vector": [${values}]}`);
  }
  return lines.join("\n") + "\n";
}
