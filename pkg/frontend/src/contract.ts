// Readers for the normative anchor contract of the server-rendered pages:
// ids "deeplink", "annotation-form", "triples", "bookmark"; class
// "highlight"; data-x/y/w/h on rect overlays. Nothing else is scraped.

export type HighlightRect = { x: number; y: number; w: number; h: number };

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export function selfLink(doc: Document): string | null {
  const el = doc.getElementById('deeplink');
  return el ? (el.textContent ?? '').trim() : null;
}

export function overlayRect(el: HTMLElement): HighlightRect | null {
  const nums: number[] = [];
  for (const key of ['x', 'y', 'w', 'h']) {
    const raw = el.dataset[key];
    if (raw === undefined) {
      return null;
    }
    const value = Number(raw);
    if (!Number.isFinite(value)) {
      return null;
    }
    nums.push(value);
  }
  return { x: nums[0], y: nums[1], w: nums[2], h: nums[3] };
}

export function annotationRows(doc: Document): Array<{ predicate: string; object: string }> {
  const list = doc.getElementById('triples');
  if (!list) {
    return [];
  }
  const rows: Array<{ predicate: string; object: string }> = [];
  for (const li of Array.from(list.querySelectorAll('li'))) {
    rows.push({
      predicate: li.querySelector('.predicate')?.textContent ?? '',
      object: li.querySelector('.object')?.textContent ?? '',
    });
  }
  return rows;
}
