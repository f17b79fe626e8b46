// Readers for the normative anchor contract of the server-rendered pages:
// ids "deeplink", "annotation-form", "triples", "bookmark"; class
// "highlight"; data-x/y/w/h on rect overlays. Nothing else is scraped.
export function selfLink(doc) {
    const el = doc.getElementById('deeplink');
    return el ? (el.textContent ?? '').trim() : null;
}
export function overlayRect(el) {
    const nums = [];
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
export function annotationRows(doc) {
    const list = doc.getElementById('triples');
    if (!list) {
        return [];
    }
    const rows = [];
    for (const li of Array.from(list.querySelectorAll('li'))) {
        rows.push({
            predicate: li.querySelector('.predicate')?.textContent ?? '',
            object: li.querySelector('.object')?.textContent ?? '',
        });
    }
    return rows;
}
